#pragma once

#include "mvsched/model.hpp"
#include "mvsched/pipeline.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace mvsched {

struct ExploreOptions {
    int w_step = 16;
    int w_max = 2048;
    int m_halvings = 6;  ///< m grid: min period / 2^k for k = 0..m_halvings
    PipelineOptions pipeline;
};

struct ExploreRow {
    int w_bits = 0;
    Rational m_ms;
    int slots = 0;
    int threshold = 0;                          ///< 0 when no static slot fits the cycle
    std::optional<double> utilization_percent;  ///< empty when threshold is 0
};

std::vector<int> w_grid(const Instance& instance, const ExploreOptions& options = {});
/// Shortest period in ms halved 0..m_halvings times.
std::vector<Rational> m_grid(const Instance& instance, const ExploreOptions& options = {});

/// The instance re-expressed for frame length w and cycle m. Periods keep
/// their duration in ms, capped at 64 cycles; windows are re-rounded to the
/// new cycle boundaries (release up, deadline down) inside the new period.
Instance rescale(const Instance& instance, int w_bits, const Rational& m_ms);

/// Runs the pipeline on every (w, m) pair, w-major, in grid order.
/// Throws Error when the instance has an original schedule.
std::vector<ExploreRow> explore(const Instance& instance, const ExploreOptions& options = {});

void write_csv(std::ostream& out, const std::vector<ExploreRow>& rows);
/// Gnuplot-friendly blocks, one per m, blank line separated.
void write_dat(std::ostream& out, const std::vector<ExploreRow>& rows);

}  // namespace mvsched
