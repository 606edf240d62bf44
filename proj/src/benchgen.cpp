#include "mvsched/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace mvsched {

namespace {

// The standard distributions are implementation-defined; these are not, so
// equal seeds give equal instances on every platform.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::size_t>(hi - lo + 1)));
}

bool chance(std::mt19937_64& rng, double percent) { return uniform01(rng) * 100.0 < percent; }

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_index(rng, i)]);
}

/// Uniform nonempty subset of `from`.
std::vector<std::size_t> nonempty_subset(const std::vector<std::size_t>& from, std::mt19937_64& rng) {
    std::vector<std::size_t> out;
    while (out.empty()) {
        for (std::size_t v : from) {
            if (rng() & 1U) out.push_back(v);
        }
    }
    return out;
}

int share(int total, double percent) { return static_cast<int>(std::lround(total * percent / 100.0)); }

struct Timing {
    int period;
    int release;
    int deadline;
    bool has_release;
    bool has_deadline;
};

Timing draw_timing(const GeneratorParams& p, std::mt19937_64& rng) {
    Timing t{};
    t.period = p.period_distribution.sample(rng);
    t.deadline = t.period - 1;
    if (chance(rng, p.deadline_fraction)) {
        t.has_deadline = true;
        t.deadline = uniform_int(rng, (2 * t.period) / 3, t.period - 1);
    }
    if (chance(rng, p.release_fraction)) {
        t.has_release = true;
        t.release = uniform_int(rng, 0, std::min(5, t.deadline));
    }
    return t;
}

Signal draw_signal(const GeneratorParams& p, std::mt19937_64& rng, std::string id, GenerationStats& stats) {
    Timing t = draw_timing(p, rng);
    int payload = std::min(p.payload_distribution.sample(rng), std::min(p.network.frame_payload_bits, kMaxPayloadBits));
    stats.with_release += t.has_release ? 1 : 0;
    stats.with_deadline += t.has_deadline ? 1 : 0;
    return Signal{std::move(id), t.period, payload, {}, t.release, t.deadline};
}

std::string fresh_id(const std::string& prefix, int& counter, const std::set<std::string>& taken) {
    std::string id;
    do {
        id = prefix + std::to_string(++counter);
    } while (taken.contains(id));
    return id;
}

}  // namespace

int DiscreteDistribution::sample(std::mt19937_64& rng) const {
    if (weights.empty()) throw Error("empty distribution");
    double total = 0;
    for (const auto& [v, w] : weights) total += w;
    double x = uniform01(rng) * total;
    for (const auto& [v, w] : weights) {
        if (x < w) return v;
        x -= w;
    }
    return weights.back().first;
}

void GeneratorParams::check() const {
    if (signal_count < 1 || variant_count < 1 || ecu_count < 1) {
        throw Error("signal, variant and ECU counts must be positive");
    }
    auto pct = [](double x) { return x >= 0 && x <= 100; };
    if (!pct(alpha) || !pct(beta) || !pct(gamma) || std::abs(alpha + beta + gamma - 100.0) > 1e-6) {
        throw Error("alpha + beta + gamma must be 100");
    }
    if (!pct(ecu_alpha) || !pct(ecu_gamma) || ecu_alpha + ecu_gamma > 100.0 + 1e-6) {
        throw Error("ECU shares must lie in [0, 100] and sum to at most 100");
    }
    if (!pct(release_fraction) || !pct(deadline_fraction)) throw Error("fractions must lie in [0, 100]");
    if (period_distribution.empty() || payload_distribution.empty()) throw Error("distributions must not be empty");
    for (const auto& [p, w] : period_distribution.weights) {
        if (!is_admissible_period(p) || w < 0) throw Error("bad period distribution entry");
    }
    for (const auto& [c, w] : payload_distribution.weights) {
        if (c < 1 || w < 0) throw Error("bad payload distribution entry");
    }
    const auto& m = incremental.mutation;
    if (!pct(m.entry) || !pct(m.drop) || !pct(m.add) || !pct(m.add_absent) || !pct(incremental.new_ecu_share)) {
        throw Error("mutation rates must lie in [0, 100]");
    }
    if (incremental.new_signal_count < 0 || incremental.new_ecu_count < 0) {
        throw Error("incremental counts must be nonnegative");
    }
}

GenerationResult generate_with_stats(const GeneratorParams& params) {
    params.check();
    std::mt19937_64 rng(params.seed);
    GenerationResult out;
    GenerationStats& stats = out.stats;
    Instance& inst = out.instance;
    inst.network = params.network;

    const int n = params.signal_count;
    const int variants = params.variant_count;
    int n_specific = share(n, params.alpha);
    int n_common = std::min(n - n_specific, share(n, params.gamma));
    int n_shared = n - n_specific - n_common;
    if (variants == 1) {  // every signal is common when there is only one variant
        n_common = n;
        n_specific = n_shared = 0;
    }
    const int e = params.ecu_count;
    int e_specific = share(e, params.ecu_alpha);
    int e_common = std::min(e - e_specific, share(e, params.ecu_gamma));
    int e_shared = e - e_specific - e_common;
    if (variants == 1) {
        e_common = e;
        e_specific = e_shared = 0;
    }
    if (n_common > 0 && e_common == 0) throw Error("common signals requested but there are no common ECUs");
    if (e_specific > n_specific) throw Error("every specific ECU needs a specific signal");
    if (n_shared > 0 && e_common + e_shared == 0) throw Error("shared signals need a common or shared ECU");
    stats.specific = n_specific;
    stats.shared = n_shared;
    stats.common = n_common;

    for (int i = 0; i < n; ++i) inst.signals.push_back(draw_signal(params, rng, "s" + std::to_string(i + 1), stats));
    for (int i = 0; i < e; ++i) inst.ecus.push_back("ECU" + std::to_string(i + 1));

    // ECU classes: [0, e_common) common, then shared, then specific.
    enum Kind { Specific, Shared, Common };
    std::vector<Kind> ecu_kind(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) ecu_kind[static_cast<std::size_t>(i)] = i < e_common ? Common : i < e_common + e_shared ? Shared : Specific;
    std::vector<Kind> sig_kind(static_cast<std::size_t>(n));
    {
        std::vector<Kind> kinds;
        kinds.insert(kinds.end(), static_cast<std::size_t>(n_specific), Specific);
        kinds.insert(kinds.end(), static_cast<std::size_t>(n_shared), Shared);
        kinds.insert(kinds.end(), static_cast<std::size_t>(n_common), Common);
        shuffle(kinds, rng);
        sig_kind = kinds;
    }

    std::vector<std::size_t> ecu_of(static_cast<std::size_t>(n), 0);
    std::vector<char> assigned(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<std::size_t>> pool(3);
    for (std::size_t s = 0; s < sig_kind.size(); ++s) pool[sig_kind[s]].push_back(s);
    std::vector<std::size_t> cursor(3, 0);
    auto take = [&](Kind k) -> std::optional<std::size_t> {
        if (cursor[k] >= pool[k].size()) return std::nullopt;
        return pool[k][cursor[k]++];
    };
    // every ECU transmits at least one signal
    for (int i = 0; i < e; ++i) {
        std::vector<Kind> prefs;
        switch (ecu_kind[static_cast<std::size_t>(i)]) {
            case Specific: prefs = {Specific}; break;
            case Common: prefs = {Common, Shared, Specific}; break;
            case Shared: prefs = {Shared, Specific}; break;
        }
        std::optional<std::size_t> s;
        for (Kind k : prefs) {
            if ((s = take(k))) break;
        }
        if (!s) throw Error("not enough signals to use every ECU");
        ecu_of[*s] = static_cast<std::size_t>(i);
        assigned[*s] = 1;
    }
    std::vector<std::size_t> common_ecus, nonspecific_ecus, all_ecus;
    for (int i = 0; i < e; ++i) {
        auto u = static_cast<std::size_t>(i);
        all_ecus.push_back(u);
        if (ecu_kind[u] == Common) common_ecus.push_back(u);
        if (ecu_kind[u] != Specific) nonspecific_ecus.push_back(u);
    }
    for (std::size_t s = 0; s < sig_kind.size(); ++s) {
        if (assigned[s]) continue;
        const auto& from = sig_kind[s] == Common ? common_ecus : sig_kind[s] == Shared ? nonspecific_ecus : all_ecus;
        ecu_of[s] = from[uniform_index(rng, from.size())];
    }
    for (std::size_t s = 0; s < sig_kind.size(); ++s) inst.signals[s].ecu = inst.ecus[ecu_of[s]];

    // ECU to variants
    std::vector<std::size_t> every_variant;
    for (int v = 0; v < variants; ++v) every_variant.push_back(static_cast<std::size_t>(v));
    std::vector<std::vector<std::size_t>> ecu_variants(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
        auto u = static_cast<std::size_t>(i);
        switch (ecu_kind[u]) {
            case Common: ecu_variants[u] = every_variant; break;
            case Specific: ecu_variants[u] = {uniform_index(rng, every_variant.size())}; break;
            case Shared: ecu_variants[u] = nonempty_subset(every_variant, rng); break;
        }
    }

    std::vector<std::string> names;
    for (int v = 0; v < variants; ++v) names.push_back("V" + std::to_string(v + 1));
    inst.variants = VariantMatrix(names, static_cast<std::size_t>(n));
    std::vector<double> luxury(static_cast<std::size_t>(variants));
    for (auto& q : luxury) q = 30.0 + 40.0 * uniform01(rng);
    for (std::size_t s = 0; s < sig_kind.size(); ++s) {
        const auto& vs = ecu_variants[ecu_of[s]];
        switch (sig_kind[s]) {
            case Common:
                for (std::size_t v : every_variant) inst.variants.set(s, v);
                break;
            case Specific:
                inst.variants.set(s, vs[uniform_index(rng, vs.size())]);
                break;
            case Shared:
                for (std::size_t v : vs) {
                    if (chance(rng, luxury[v])) inst.variants.set(s, v);
                }
                break;
        }
    }
    for (std::size_t s = 0; s < sig_kind.size(); ++s) {
        if (inst.variants.row(s).any()) continue;
        for (std::size_t v : nonempty_subset(ecu_variants[ecu_of[s]], rng)) inst.variants.set(s, v);
        ++stats.repaired;
    }
    // a variant nobody uses gets a random signal whose ECU may join it
    for (std::size_t v = 0; v < every_variant.size(); ++v) {
        bool used = false;
        for (std::size_t s = 0; s < sig_kind.size() && !used; ++s) used = inst.variants.contains(s, v);
        if (used) continue;
        std::vector<std::size_t> candidates;
        for (std::size_t s = 0; s < sig_kind.size(); ++s) {
            const auto& vs = ecu_variants[ecu_of[s]];
            if (sig_kind[s] != Specific && std::find(vs.begin(), vs.end(), v) != vs.end()) candidates.push_back(s);
        }
        if (candidates.empty()) throw Error("variant " + names[v] + " ends up without signals");
        inst.variants.set(candidates[uniform_index(rng, candidates.size())], v);
        ++stats.repaired;
    }
    inst.check();
    return out;
}

Instance generate(const GeneratorParams& params) { return generate_with_stats(params).instance; }

IncrementalResult generate_incremental(const GeneratorParams& params, const Instance& previous,
                                       const Multischedule& previous_schedule) {
    params.check();
    std::mt19937_64 rng(params.seed);
    IncrementalResult out;
    IncrementalStats& stats = out.stats;
    Instance inst = previous;
    inst.original = previous_schedule;

    const auto& inc = params.incremental;
    const std::size_t old_signals = previous.signals.size();
    const std::size_t old_ecus = previous.ecus.size();
    const std::size_t old_variants = previous.variants.variant_count();
    if (old_variants == 0) throw Error("previous instance has no variants");
    if (inc.new_ecu_count > inc.new_signal_count) throw Error("every new ECU needs a new signal");

    std::set<std::string> taken_signals, taken_ecus;
    for (const auto& s : previous.signals) taken_signals.insert(s.id);
    for (const auto& id : previous.ecus) taken_ecus.insert(id);
    int ecu_counter = static_cast<int>(old_ecus);
    for (int i = 0; i < inc.new_ecu_count; ++i) {
        auto id = fresh_id("ECU", ecu_counter, taken_ecus);
        taken_ecus.insert(id);
        inst.ecus.push_back(id);
    }
    int sig_counter = static_cast<int>(old_signals);
    for (int i = 0; i < inc.new_signal_count; ++i) {
        auto id = fresh_id("s", sig_counter, taken_signals);
        taken_signals.insert(id);
        inst.signals.push_back(draw_signal(params, rng, id, stats.generation));
        inst.variants.add_signal();
    }

    // transmitting ECUs of the new signals
    const int n_new = inc.new_signal_count;
    int on_new = inc.new_ecu_count > 0 ? std::max(inc.new_ecu_count, share(n_new, inc.new_ecu_share)) : 0;
    on_new = std::min(on_new, n_new);
    std::vector<std::size_t> slots(static_cast<std::size_t>(n_new));
    for (int i = 0; i < n_new; ++i) slots[static_cast<std::size_t>(i)] = static_cast<std::size_t>(i);
    shuffle(slots, rng);
    for (int k = 0; k < n_new; ++k) {
        std::size_t ecu = 0;
        if (k < inc.new_ecu_count) {
            ecu = old_ecus + static_cast<std::size_t>(k);
        } else if (k < on_new) {
            ecu = old_ecus + uniform_index(rng, static_cast<std::size_t>(inc.new_ecu_count));
        } else {
            ecu = uniform_index(rng, old_ecus);
        }
        if (ecu >= old_ecus) ++stats.new_signals_on_new_ecus;
        inst.signals[old_signals + slots[static_cast<std::size_t>(k)]].ecu = inst.ecus[ecu];
    }

    std::size_t base = uniform_index(rng, old_variants);
    stats.base_variant = base;
    std::set<std::string> base_ecus;
    for (std::size_t s = 0; s < old_signals; ++s) {
        if (previous.variants.contains(s, base)) base_ecus.insert(previous.signals[s].ecu);
    }
    std::set<std::string> names(previous.variants.variant_names().begin(), previous.variants.variant_names().end());
    int variant_counter = static_cast<int>(old_variants);
    std::size_t nv = inst.variants.add_variant(fresh_id("V", variant_counter, names));

    const auto& m = inc.mutation;
    stats.mutable_signals = static_cast<int>(old_signals);
    for (std::size_t s = 0; s < old_signals; ++s) {
        bool in_base = previous.variants.contains(s, base);
        bool member = in_base;
        if (chance(rng, m.entry)) {
            ++stats.entered_mutation;
            if (in_base) {
                ++stats.in_base;
                if (chance(rng, m.drop)) {
                    member = false;
                    ++stats.dropped;
                }
            } else if (base_ecus.contains(previous.signals[s].ecu)) {
                ++stats.ecu_in_base;
                if (chance(rng, m.add)) {
                    member = true;
                    ++stats.added;
                }
            } else {
                ++stats.ecu_absent;
                if (chance(rng, m.add_absent)) {
                    member = true;
                    ++stats.added_absent;
                }
            }
        }
        if (member) inst.variants.set(s, nv);
    }
    for (std::size_t s = old_signals; s < inst.signals.size(); ++s) inst.variants.set(s, nv);

    bool used = false;
    for (std::size_t s = 0; s < inst.signals.size() && !used; ++s) used = inst.variants.contains(s, nv);
    if (!used) {
        // everything was dropped and nothing is new: keep one base signal
        for (std::size_t s = 0; s < old_signals; ++s) {
            if (previous.variants.contains(s, base)) {
                inst.variants.set(s, nv);
                break;
            }
        }
    }
    inst.check();
    out.instance = std::move(inst);
    return out;
}

}  // namespace mvsched
