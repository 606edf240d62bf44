#include "mvsched/io.hpp"

#include <algorithm>
#include <fstream>

namespace mvsched {

namespace {

Rational rational_from(const Json& j, const char* what) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_number()) return Rational::from_double(j.get<double>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw Error(std::string(what) + ": expected a number or \"a/b\"");
}

Json rational_json(const Rational& r) {
    if (r.is_integer()) return r.num();
    auto d = r.decimal();
    if (d.find('/') != std::string::npos) return d;
    return r.to_double();
}

int int_from(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("missing field ") + key);
    if (!it->is_number_integer()) throw Error(std::string(key) + " must be an integer");
    return it->get<int>();
}

std::string string_from(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_string()) throw Error(std::string("missing string field ") + key);
    return it->get<std::string>();
}

/// ms value as a whole number of cycles.
int cycles_from_ms(const Json& j, const Rational& cycle_ms, const std::string& what) {
    Rational c = rational_from(j, what.c_str()) / cycle_ms;
    if (!c.is_integer()) throw Error(what + " is not a multiple of the cycle duration");
    return static_cast<int>(c.num());
}

DiscreteDistribution distribution_from(const Json& j, const char* what) {
    if (!j.is_object()) throw Error(std::string(what) + " must map values to weights");
    DiscreteDistribution d;
    for (const auto& [k, w] : j.items()) d.weights.emplace_back(std::stoi(k), w.get<double>());
    std::sort(d.weights.begin(), d.weights.end());
    return d;
}

}  // namespace

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path& path, const Json& value) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << value.dump(2) << '\n';
}

NetworkConfig network_from_json(const Json& j) {
    NetworkConfig n;
    if (!j.is_object()) throw Error("network must be an object");
    if (!j.contains("cycle_duration_ms")) throw Error("missing field cycle_duration_ms");
    n.cycle_duration_ms = rational_from(j.at("cycle_duration_ms"), "cycle_duration_ms");
    n.frame_payload_bits = int_from(j, "frame_payload_bits");
    if (j.contains("bandwidth_bits_per_ms")) n.bandwidth_bits_per_ms = int_from(j, "bandwidth_bits_per_ms");
    if (j.contains("nit_duration_us")) n.nit_duration_us = rational_from(j.at("nit_duration_us"), "nit_duration_us");
    if (j.contains("cycle_overhead_us")) {
        n.cycle_overhead_us = rational_from(j.at("cycle_overhead_us"), "cycle_overhead_us");
    }
    if (j.contains("slot_overhead_bits")) n.slot_overhead_bits = int_from(j, "slot_overhead_bits");
    if (j.contains("slots_threshold_override") && !j.at("slots_threshold_override").is_null()) {
        n.slots_threshold_override = int_from(j, "slots_threshold_override");
    }
    return n;
}

Json to_json(const NetworkConfig& n) {
    Json j;
    j["cycle_duration_ms"] = rational_json(n.cycle_duration_ms);
    j["frame_payload_bits"] = n.frame_payload_bits;
    j["bandwidth_bits_per_ms"] = n.bandwidth_bits_per_ms;
    j["nit_duration_us"] = rational_json(n.nit_duration_us);
    j["cycle_overhead_us"] = rational_json(n.cycle_overhead_us);
    j["slot_overhead_bits"] = n.slot_overhead_bits;
    if (n.slots_threshold_override) j["slots_threshold_override"] = *n.slots_threshold_override;
    return j;
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object()) throw Error("instance must be a JSON object");
    Instance inst;
    if (!j.contains("network")) throw Error("missing field network");
    inst.network = network_from_json(j.at("network"));
    if (!j.contains("ecus") || !j.at("ecus").is_array()) throw Error("missing ecus list");
    for (const auto& e : j.at("ecus")) inst.ecus.push_back(e.get<std::string>());

    if (!j.contains("signals") || !j.at("signals").is_array()) throw Error("missing signals list");
    const Rational& M = inst.network.cycle_duration_ms;
    if (M <= Rational(0)) throw Error("cycle_duration_ms must be positive");
    for (const auto& js : j.at("signals")) {
        Signal s;
        s.id = string_from(js, "id");
        s.ecu = string_from(js, "ecu");
        s.payload_bits = int_from(js, "payload_bits");
        if (js.contains("period_cycles")) {
            s.period_cycles = int_from(js, "period_cycles");
        } else if (js.contains("period_ms")) {
            s.period_cycles = cycles_from_ms(js.at("period_ms"), M, "signal " + s.id + " period_ms");
        } else {
            throw Error("signal " + s.id + " has no period");
        }
        s.release_cycle = 0;
        s.deadline_cycle = s.period_cycles - 1;
        if (js.contains("release_cycle")) {
            s.release_cycle = int_from(js, "release_cycle");
        } else if (js.contains("release_ms")) {
            s.release_cycle = cycles_from_ms(js.at("release_ms"), M, "signal " + s.id + " release_ms");
        }
        if (js.contains("deadline_cycle")) {
            s.deadline_cycle = int_from(js, "deadline_cycle");
        } else if (js.contains("deadline_ms")) {
            s.deadline_cycle = cycles_from_ms(js.at("deadline_ms"), M, "signal " + s.id + " deadline_ms") - 1;
        }
        inst.signals.push_back(std::move(s));
    }

    if (!j.contains("variants")) throw Error("missing field variants");
    const auto& jv = j.at("variants");
    std::vector<std::string> names = jv.at("variant_names").get<std::vector<std::string>>();
    inst.variants = VariantMatrix(names, inst.signals.size());
    auto lookup = inst.signal_lookup();
    std::vector<bool> seen(inst.signals.size(), false);
    for (const auto& [sid, row] : jv.at("entries").items()) {
        auto it = lookup.find(sid);
        if (it == lookup.end()) throw Error("variant entries reference unknown signal " + sid);
        if (!row.is_array() || row.size() != names.size()) {
            throw Error("variant row of " + sid + " must have " + std::to_string(names.size()) + " entries");
        }
        for (std::size_t v = 0; v < names.size(); ++v) {
            int bit = row[v].get<int>();
            if (bit != 0 && bit != 1) throw Error("variant entries must be 0 or 1");
            inst.variants.set(it->second, v, bit == 1);
        }
        seen[it->second] = true;
    }
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (!seen[i]) throw Error("signal " + inst.signals[i].id + " has no variant row");
    }

    if (j.contains("original_schedule") && !j.at("original_schedule").is_null()) {
        inst.original = multischedule_from_json(j.at("original_schedule"));
    }
    inst.check();
    return inst;
}

Json to_json(const Instance& inst) {
    Json j;
    j["network"] = to_json(inst.network);
    j["ecus"] = inst.ecus;
    Json signals = Json::array();
    for (const auto& s : inst.signals) {
        signals.push_back({{"id", s.id},
                           {"period_cycles", s.period_cycles},
                           {"payload_bits", s.payload_bits},
                           {"ecu", s.ecu},
                           {"release_cycle", s.release_cycle},
                           {"deadline_cycle", s.deadline_cycle}});
    }
    j["signals"] = signals;
    Json entries = Json::object();
    for (std::size_t i = 0; i < inst.signals.size(); ++i) {
        Json row = Json::array();
        for (std::size_t v = 0; v < inst.variants.variant_count(); ++v) row.push_back(inst.variants.contains(i, v) ? 1 : 0);
        entries[inst.signals[i].id] = row;
    }
    j["variants"] = {{"variant_names", inst.variants.variant_names()}, {"entries", entries}};
    if (inst.original) j["original_schedule"] = to_json(*inst.original);
    return j;
}

Instance load_instance(const std::filesystem::path& path) {
    auto j = read_json_file(path);
    try {
        return instance_from_json(j);
    } catch (const Json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

Multischedule multischedule_from_json(const Json& j) {
    if (!j.is_object()) throw Error("multischedule must be a JSON object");
    Multischedule ms;
    ms.hyperperiod = int_from(j, "hyperperiod");
    if (j.contains("slot_owners")) {
        for (const auto& [slot, owners] : j.at("slot_owners").items()) {
            auto& set = ms.slot_owners[std::stoi(slot)];
            for (const auto& o : owners) set.insert(o.get<std::string>());
        }
    }
    if (!j.contains("assignments")) throw Error("missing field assignments");
    for (const auto& [sid, a] : j.at("assignments").items()) {
        ms.assignments[sid] = Assignment{int_from(a, "cycle"), int_from(a, "slot"), int_from(a, "offset")};
    }
    return ms;
}

Json to_json(const Multischedule& ms, std::optional<std::uint64_t> seed) {
    Json j;
    j["hyperperiod"] = ms.hyperperiod;
    Json owners = Json::object();
    for (const auto& [slot, ecus] : ms.slot_owners) owners[std::to_string(slot)] = ecus;
    j["slot_owners"] = owners;
    Json assignments = Json::object();
    for (const auto& [sid, a] : ms.assignments) {
        assignments[sid] = {{"cycle", a.cycle}, {"slot", a.slot}, {"offset", a.offset}};
    }
    j["assignments"] = assignments;
    if (seed) j["metadata"] = {{"seed", *seed}};
    return j;
}

Multischedule load_multischedule(const std::filesystem::path& path) {
    auto j = read_json_file(path);
    try {
        return multischedule_from_json(j);
    } catch (const Json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

ContingencyTable contingency_from_json(const Json& j) {
    ContingencyTable t;
    t.source = TableSource::DesignerSupplied;
    if (!j.contains("cells")) throw Error("contingency table needs a cells list");
    for (const auto& c : j.at("cells")) {
        t.cells.push_back({int_from(c, "period_cycles"), int_from(c, "payload_bits"), c.at("probability").get<double>()});
    }
    t.normalize();
    if (t.cells.empty()) throw Error("contingency table has no positive cell");
    return t;
}

Json to_json(const ContingencyTable& t) {
    Json cells = Json::array();
    for (const auto& c : t.cells) {
        cells.push_back({{"period_cycles", c.period_cycles}, {"payload_bits", c.payload_bits}, {"probability", c.probability}});
    }
    return {{"cells", cells},
            {"source", t.source == TableSource::DesignerSupplied ? "designer-supplied" : "derived-from-instance"}};
}

GeneratorParams params_from_json(const Json& j, const std::filesystem::path& base_dir) {
    GeneratorParams p;
    auto get_d = [&](const char* key, double& into) {
        if (j.contains(key)) into = j.at(key).get<double>();
    };
    auto get_i = [&](const char* key, int& into) {
        if (j.contains(key)) into = int_from(j, key);
    };
    get_i("signal_count", p.signal_count);
    get_i("variant_count", p.variant_count);
    get_i("ecu_count", p.ecu_count);
    get_d("alpha", p.alpha);
    get_d("gamma", p.gamma);
    if (j.contains("beta")) {
        p.beta = j.at("beta").get<double>();
    } else {
        p.beta = 100.0 - p.alpha - p.gamma;
    }
    get_d("ecu_alpha", p.ecu_alpha);
    get_d("ecu_gamma", p.ecu_gamma);
    get_d("release_fraction", p.release_fraction);
    get_d("deadline_fraction", p.deadline_fraction);
    if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("network")) p.network = network_from_json(j.at("network"));
    if (j.contains("distribution_file")) {
        auto d = read_json_file(base_dir / j.at("distribution_file").get<std::string>());
        p.period_distribution = distribution_from(d.at("period_cycles"), "period_cycles");
        p.payload_distribution = distribution_from(d.at("payload_bits"), "payload_bits");
    }
    if (j.contains("period_distribution")) p.period_distribution = distribution_from(j.at("period_distribution"), "period_distribution");
    if (j.contains("payload_distribution")) p.payload_distribution = distribution_from(j.at("payload_distribution"), "payload_distribution");
    if (j.contains("incremental")) {
        const auto& ji = j.at("incremental");
        auto& inc = p.incremental;
        if (ji.contains("new_signal_count")) inc.new_signal_count = int_from(ji, "new_signal_count");
        if (ji.contains("new_ecu_count")) inc.new_ecu_count = int_from(ji, "new_ecu_count");
        if (ji.contains("new_ecu_share")) inc.new_ecu_share = ji.at("new_ecu_share").get<double>();
        if (ji.contains("mutation")) {
            const auto& jm = ji.at("mutation");
            auto& m = inc.mutation;
            if (jm.contains("entry")) m.entry = jm.at("entry").get<double>();
            if (jm.contains("drop")) m.drop = jm.at("drop").get<double>();
            if (jm.contains("add")) m.add = jm.at("add").get<double>();
            if (jm.contains("add_absent")) m.add_absent = jm.at("add_absent").get<double>();
        }
    }
    p.check();
    return p;
}

GeneratorParams load_params(const std::filesystem::path& path) {
    auto j = read_json_file(path);
    try {
        return params_from_json(j, path.parent_path());
    } catch (const Json::exception& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

Json to_json(const ValidationReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations) violations.push_back({{"kind", to_string(v.kind)}, {"detail", v.detail}});
    Json j{{"ok", r.ok},
           {"violations", violations},
           {"slots", r.slots},
           {"changed_signals", r.changed_signals},
           {"changed_slots", r.changed_slots},
           {"changed", r.changed}};
    j["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
    return j;
}

Json to_json(const PipelineResult& r) {
    Json ecus = Json::array();
    for (const auto& e : r.ecus) {
        ecus.push_back({{"ecu", e.ecu},
                        {"slots", e.slots},
                        {"conflicts", e.conflicts},
                        {"evicted", e.evicted},
                        {"optimized_slots", e.optimized_slots}});
    }
    Json j{{"slots", r.slots},
           {"feasible", r.feasible},
           {"clique_bound", r.clique_bound},
           {"greedy_slots", r.greedy_slots},
           {"coloring_exact", r.coloring_exact},
           {"mwis_exact", r.mwis_exact},
           {"ecus", ecus},
           {"released_fixations", r.released_fixations},
           {"warnings", r.warnings}};
    j["threshold"] = r.threshold ? Json(*r.threshold) : Json(nullptr);
    return j;
}

Json to_json(const IncrementalStats& s) {
    return {{"base_variant", s.base_variant},
            {"mutable_signals", s.mutable_signals},
            {"entered_mutation", s.entered_mutation},
            {"in_base", s.in_base},
            {"dropped", s.dropped},
            {"ecu_in_base", s.ecu_in_base},
            {"added", s.added},
            {"ecu_absent", s.ecu_absent},
            {"added_absent", s.added_absent},
            {"new_signals_on_new_ecus", s.new_signals_on_new_ecus}};
}

}  // namespace mvsched
