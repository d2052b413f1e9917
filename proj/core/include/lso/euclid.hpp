#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "lso/metric.hpp"
#include "lso/ordering.hpp"

namespace lso {

// Randomness behind one Euclidean / lp triangle ordering. Centers for base
// scale j are an i.i.d. uniform stream in [0, 4 w_j)^d; scale i = j + k*gamma
// reuses them multiplied by xi^(k*gamma). Streams grow on demand, the k-th
// center of a stream depends only on (seed, shift, j, k).
class BallCarvingScheme {
public:
    BallCarvingScheme(int d, double p, double t, double delta, int shift, uint64_t seed);

    int dim() const { return d_; }
    double p() const { return p_; }
    double t() const { return t_; }                  // target stretch
    double t_internal() const { return t_ / 2; }     // value used in xi, gamma
    double delta() const { return delta_; }
    double xi() const { return xi_; }
    int gamma() const { return gamma_; }
    int shift() const { return shift_; }
    int shift_count() const { return shifts_; }
    uint64_t seed() const { return seed_; }

    double width(int i) const;  // w_i = xi^i (1+delta/3)^shift
    int base_scale(int i) const;
    // Center c of scale i (scaled copy of base scale j's c-th center).
    std::vector<double> center(int i, int c) const;
    int center_count(int j) const { return static_cast<int>(centers_.at(j).size()); }
    int center_count_or_zero(int j) const {
        auto it = centers_.find(j);
        return it == centers_.end() ? 0 : static_cast<int>(it->second.size());
    }
    const std::vector<std::vector<double>>& base_centers(int j) const { return centers_.at(j); }
    // Appends `count` more centers to base scale j's stream.
    void extend(int j, int count) const;

    long long budget_cap = 1LL << 24;  // total centers per base scale

private:
    int d_;
    double p_, t_, delta_, xi_;
    int gamma_, shift_, shifts_;
    uint64_t seed_;
    mutable std::map<int, std::vector<std::vector<double>>> centers_;
    mutable std::map<int, Rng> streams_;
};

struct ClusterKey {
    int center;
    std::vector<int> lattice;
    auto operator<=>(const ClusterKey&) const = default;
};

struct ScaleClustering {
    double w = 0;
    std::vector<ClusterKey> key;  // per point
};

// First-covering-center assignment; extends the center stream as needed.
ScaleClustering carve_scale(const PointSet& ps, const BallCarvingScheme& s, int i);

struct ScaleRange {
    int i_min, i_max;
};
ScaleRange ordering_scale_range(const PointSet& ps, const BallCarvingScheme& s);
ScaleRange scale_range_from(double min_dist, double max_dist, const BallCarvingScheme& s);

// Lexicographic sort by cluster keys from the top scale down, ties by id.
Ordering ordering_from_scheme(const PointSet& ps, const BallCarvingScheme& s, std::optional<ScaleRange> range = {});

struct TriangleParams {
    double p = 2;
    double t = 4;
    double delta = 0.5;
};

double triangle_xi(int d, double p, double t);
int triangle_gamma(int d, double p, double t);
int triangle_shift_count(int d, double p, double t, double delta);
int triangle_initial_m(int d, double t, int n);

// m schemes per shift; family rho = (1+delta) t.
OrderingFamily build_triangle_lso(const PointSet& ps, const TriangleParams& prm, int m, uint64_t seed);

struct VerifiedTriangleLso {
    OrderingFamily family;
    VerificationReport report;
    int rounds = 0;  // doublings used
    int m = 0;
};
// Doubles m (fresh seeds) until verify_triangle passes, at most max_doublings times.
VerifiedTriangleLso build_verified_triangle_lso(const PointSet& ps, const TriangleParams& prm, uint64_t seed,
                                                int max_doublings = 6);

struct VolumeRatioEstimate {
    int d = 0;
    double R = 0, separation = 0, p = 2;
    long long samples = 0;
    long long union_hits = 0, inter_hits = 0;
    double estimate = 0, stderr_ = 0;
};

// Vol(B(0,R) n B(s e1,R)) / Vol(union) in lp by Monte Carlo.
VolumeRatioEstimate estimate_volume_ratio(int d, double R, double separation, double p, long long samples, uint64_t seed);
// Exact 2-D Euclidean lens ratio, for reference.
double lens_ratio_2d(double R, double separation);

// Classic LSO over shifted hierarchical grids.
class GridLso {
public:
    GridLso(const PointSet& ps, double eps, uint64_t seed, int extra_levels = 0);
    // The family's hint refers back to this object.
    GridLso(const GridLso&) = delete;
    GridLso& operator=(const GridLso&) = delete;

    const OrderingFamily& family() const { return fam_; }
    double eps() const { return eps_; }
    int pattern_levels() const { return m_; }
    int shift_count() const { return dp_ + 1; }
    long long patterns() const { return cells_ / 2; }
    // Virtual ordering id (shift, residue, pattern) serving (x,y); O(d) work.
    struct Slot {
        int shift, residue;
        long long pattern;
        auto operator<=>(const Slot&) const = default;
    };
    Slot satisfying_slot(int x, int y) const;
    // Index into family().orderings, or -1 if that slot is not materialized.
    int satisfying_ordering(int x, int y) const;
    Ordering make_ordering(const Slot& s) const;

private:
    std::vector<uint64_t> grid_coords(int shift, int point) const;
    uint64_t subcell_index(const std::vector<uint64_t>& X, int level) const;
    long long walecki_position(long long pattern, uint64_t v) const;

    int n_, d_, dp_, m_;
    double eps_;
    long long cells_;
    static constexpr int kBits = 40;
    std::vector<std::vector<double>> norm_;  // normalized points in [0,1)^dp
    std::vector<double> offset_;
    std::map<Slot, int> index_;
    OrderingFamily fam_;
};

struct VerifiedGridLso {
    std::unique_ptr<GridLso> lso;
    VerificationReport report;
    int rounds = 0;
};
VerifiedGridLso build_verified_grid_lso(const PointSet& ps, double eps, uint64_t seed, int max_rounds = 4);

}  // namespace lso
