#include "hyperlab/grid.hpp"

#include <algorithm>
#include <cmath>

namespace hyperlab {

namespace {
constexpr long long kBitmapLimit = 1LL << 24;

long long axis_cells(double lo, double hi, double eps) {
    double q = (hi - lo) / eps;
    double r = std::round(q);
    // snap to integer cell counts when eps divides the axis length
    long long c = (std::abs(q - r) < 1e-9) ? static_cast<long long>(r)
                                           : static_cast<long long>(std::floor(q));
    return std::max<long long>(c, 1);
}
}  // namespace

GridCover::GridCover(const Window& w, double eps) : win_(w), eps_(eps) {
    if (!(eps > 0)) throw ConfigError("grid eps must be positive");
    if (eps > win_.min_axis_length() + 1e-12) throw ConfigError("grid eps exceeds an axis length");
    total_ = 1;
    for (auto& [lo, hi] : win_.ax) {
        ncells_.push_back(axis_cells(lo, hi, eps));
        total_ *= ncells_.back();
    }
    use_bitmap_ = total_ <= kBitmapLimit;
    if (use_bitmap_) bitmap_.assign(static_cast<size_t>((total_ + 63) / 64), 0);
}

long long GridCover::cell_index(const Eigen::VectorXd& p) const {
    if (p.size() != win_.dim()) throw DimensionMismatch("grid cell_index");
    long long idx = 0;
    for (int i = 0; i < win_.dim(); ++i) {
        double t = (p[i] - win_.ax[i][0]) / eps_;
        if (t < 0) return -1;
        long long c = static_cast<long long>(std::floor(t));
        if (c >= ncells_[i]) return -1;  // includes points exactly at hi
        idx = idx * ncells_[i] + c;
    }
    return idx;
}

bool GridCover::is_hit(long long idx) const {
    if (idx < 0 || idx >= total_) return false;
    if (use_bitmap_)
        return (bitmap_[static_cast<size_t>(idx >> 6)] >> (idx & 63)) & 1;
    return hset_.count(idx) > 0;
}

void GridCover::mark_cell(long long idx) {
    if (idx < 0 || idx >= total_) throw ConfigError("cell index out of range");
    if (use_bitmap_) {
        uint64_t& word = bitmap_[static_cast<size_t>(idx >> 6)];
        uint64_t bit = 1ULL << (idx & 63);
        if (!(word & bit)) {
            word |= bit;
            ++hits_;
        }
    } else if (hset_.insert(idx).second) {
        ++hits_;
    }
}

bool GridCover::mark(const Eigen::VectorXd& p) {
    long long idx = cell_index(p);
    if (idx < 0) return false;
    mark_cell(idx);
    return true;
}

void GridCover::mark_all(const PointSample& s) {
    for (size_t i = 0; i < s.size(); ++i) mark(s.pt(i));
}

double GridCover::measure() const {
    return static_cast<double>(hits_) * std::pow(eps_, win_.dim());
}

std::vector<long long> GridCover::hit_cells() const {
    std::vector<long long> out;
    out.reserve(static_cast<size_t>(hits_));
    if (use_bitmap_) {
        for (long long i = 0; i < total_; ++i)
            if (is_hit(i)) out.push_back(i);
    } else {
        out.assign(hset_.begin(), hset_.end());
        std::sort(out.begin(), out.end());
    }
    return out;
}

bool GridCover::same_grid(const GridCover& o) const {
    return win_ == o.win_ && eps_ == o.eps_;
}

GridCover merge(const GridCover& a, const GridCover& b) {
    if (!a.same_grid(b)) throw IncompatibleGrids();
    GridCover out(a);
    if (out.use_bitmap_) {
        long long h = 0;
        for (size_t i = 0; i < out.bitmap_.size(); ++i) {
            out.bitmap_[i] |= b.bitmap_[i];
            h += __builtin_popcountll(out.bitmap_[i]);
        }
        out.hits_ = h;
    } else {
        for (long long idx : b.hset_) out.hset_.insert(idx);
        out.hits_ = static_cast<long long>(out.hset_.size());
    }
    return out;
}

GridCover coverage(const PointSample& points, const Window& window, double eps) {
    GridCover g(window, eps);
    g.mark_all(points);
    return g;
}

GridCover coverage_in_subspace(const PointSample& points, const Subspace& M,
                               const Window& mwindow, double eps) {
    if (mwindow.dim() != M.r) throw DimensionMismatch("subspace window dimension");
    GridCover g(mwindow, eps);
    bool use_aux = points.aux_dim == M.r &&
                   points.aux_data.size() == points.size() * static_cast<size_t>(M.r);
    for (size_t i = 0; i < points.size(); ++i) {
        if (use_aux) {
            g.mark(points.aux_pt(i));
        } else {
            if (points.pt(i).size() != M.n) throw DimensionMismatch("subspace coverage point");
            g.mark(M.coords(points.pt(i)));
        }
    }
    return g;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::DenseEvidence: return "DenseEvidence";
        case Verdict::NotDenseEvidence: return "NotDenseEvidence";
        default: return "Inconclusive";
    }
}

Verdict verdict_from_name(const std::string& s) {
    if (s == "DenseEvidence") return Verdict::DenseEvidence;
    if (s == "NotDenseEvidence") return Verdict::NotDenseEvidence;
    if (s == "Inconclusive") return Verdict::Inconclusive;
    throw ConfigError("unknown verdict: " + s);
}

Verdict decide_verdict(const std::vector<double>& trend, const Thresholds& thr) {
    if (trend.empty()) return Verdict::Inconclusive;
    double final = trend.back();
    if (final >= thr.dense) return Verdict::DenseEvidence;
    bool plateau = trend.size() >= 2 &&
                   (final - trend[trend.size() - 2]) < thr.plateau;
    if (plateau && final < thr.sparse) return Verdict::NotDenseEvidence;
    return Verdict::Inconclusive;
}

CoverageReport report_from_trend(std::vector<double> trend, double eps,
                                 std::vector<long long> schedule, const Thresholds& thr) {
    CoverageReport r;
    r.trend = std::move(trend);
    r.schedule = std::move(schedule);
    r.epsilon = eps;
    r.thresholds = thr;
    r.coverage = r.trend.empty() ? 0.0 : r.trend.back();
    r.budget = r.schedule.empty() ? 0 : r.schedule.back();
    r.verdict = decide_verdict(r.trend, thr);
    return r;
}

CoverageReport density_trend(const std::function<PointSample(long long)>& sampler,
                             const Window& window, double eps,
                             const std::vector<long long>& schedule,
                             const Thresholds& thr) {
    if (schedule.size() < 3) throw ConfigError("budget schedule needs at least 3 entries");
    for (size_t i = 1; i < schedule.size(); ++i)
        if (schedule[i] <= schedule[i - 1]) throw ConfigError("budget schedule must increase");
    std::vector<double> trend;
    for (long long budget : schedule) {
        GridCover g = coverage(sampler(budget), window, eps);
        trend.push_back(g.coverage());
    }
    return report_from_trend(std::move(trend), eps, schedule, thr);
}

}  // namespace hyperlab
