#pragma once

#include <functional>
#include <unordered_set>

#include "hyperlab/linalg.hpp"
#include "hyperlab/types.hpp"

namespace hyperlab {

// Occupancy grid over a window: cell index = floor((x - lo) / eps) per axis,
// half-open cells, points exactly at hi excluded.  Dense bitmap when the
// total cell count is small, hash set otherwise.
class GridCover {
public:
    GridCover() = default;
    GridCover(const Window& w, double eps);

    const Window& window() const { return win_; }
    double eps() const { return eps_; }
    long long total_cells() const { return total_; }
    long long hits() const { return hits_; }
    double coverage() const { return total_ ? static_cast<double>(hits_) / static_cast<double>(total_) : 0.0; }
    // total length/area/volume of the hit cells
    double measure() const;

    // Linear cell index, or -1 when the point falls outside the binning range.
    long long cell_index(const Eigen::VectorXd& p) const;
    bool mark(const Eigen::VectorXd& p);  // returns whether the point was binned
    void mark_cell(long long idx);
    bool is_hit(long long idx) const;
    std::vector<long long> hit_cells() const;

    void mark_all(const PointSample& s);

    friend GridCover merge(const GridCover& a, const GridCover& b);
    bool same_grid(const GridCover& o) const;

private:
    Window win_;
    double eps_ = 0;
    std::vector<long long> ncells_;
    long long total_ = 0;
    long long hits_ = 0;
    bool use_bitmap_ = true;
    std::vector<uint64_t> bitmap_;
    std::unordered_set<long long> hset_;
};

GridCover merge(const GridCover& a, const GridCover& b);

GridCover coverage(const PointSample& points, const Window& window, double eps);
// Coverage in the intrinsic orthonormal coordinates of M.  Points must have
// been traced onto M already (aux coordinates set by subspace_trace), or are
// projected on the fly.
GridCover coverage_in_subspace(const PointSample& points, const Subspace& M,
                               const Window& mwindow, double eps);

enum class Verdict { DenseEvidence, NotDenseEvidence, Inconclusive };
const char* verdict_name(Verdict v);
Verdict verdict_from_name(const std::string& s);

// Verdict thresholds are explicit configuration, surfaced in every report.
struct Thresholds {
    double dense = 0.9;    // final coverage at least this -> DenseEvidence
    double sparse = 0.5;   // plateau below this -> NotDenseEvidence
    double plateau = 0.01; // coverage gain across the last doubling below this
};

struct CoverageReport {
    double coverage = 0;
    double epsilon = 0;
    long long budget = 0;                 // last budget used
    std::vector<long long> schedule;
    std::vector<double> trend;
    Verdict verdict = Verdict::Inconclusive;
    Thresholds thresholds;
};

Verdict decide_verdict(const std::vector<double>& trend, const Thresholds& thr);

// Runs `sampler` at each budget of the schedule and grades the coverage
// trend.  The sampler must be monotone: larger budgets yield supersets.
CoverageReport density_trend(const std::function<PointSample(long long)>& sampler,
                             const Window& window, double eps,
                             const std::vector<long long>& schedule,
                             const Thresholds& thr = {});

// Same grading for precomputed coverage values (used by factored probes).
CoverageReport report_from_trend(std::vector<double> trend, double eps,
                                 std::vector<long long> schedule, const Thresholds& thr = {});

}  // namespace hyperlab
