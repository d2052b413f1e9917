#include "lso/euclid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lso {

double triangle_xi(int d, double p, double t) {
    double ti = t / 2;
    return p == 2 ? 12 * std::sqrt(static_cast<double>(d)) / ti : 36.0 * d / ti;
}

int triangle_gamma(int d, double p, double t) {
    double ti = t / 2;
    return std::max(1, static_cast<int>(std::ceil(d / std::pow(ti, p) - 1e-12)));
}

int triangle_shift_count(int d, double p, double t, double delta) {
    double xi = triangle_xi(d, p, t);
    return static_cast<int>(std::floor(std::log(xi) / std::log1p(delta / 3) + 1e-12)) + 1;
}

int triangle_initial_m(int d, double t, int n) {
    double v = std::sqrt(static_cast<double>(d)) / t * std::exp(d / (2 * t * t)) * std::log(std::max(n, 2));
    return std::max(1, static_cast<int>(std::ceil(v)));
}

BallCarvingScheme::BallCarvingScheme(int d, double p, double t, double delta, int shift, uint64_t seed)
    : d_(d), p_(p), t_(t), delta_(delta), shift_(shift), seed_(seed) {
    if (d < 1) throw Error("scheme: dimension must be positive");
    if (!(p >= 1 && p <= 2)) throw Error("scheme: p must lie in [1,2]");
    if (!(t > 0) || !(delta > 0)) throw Error("scheme: t and delta must be positive");
    xi_ = triangle_xi(d, p, t);
    if (!(xi_ > 1)) throw Error("scheme: xi must exceed 1 (t too large for this dimension)");
    gamma_ = triangle_gamma(d, p, t);
    shifts_ = triangle_shift_count(d, p, t, delta);
    if (shift < 0 || shift >= shifts_) throw Error("scheme: shift index out of range");
}

double BallCarvingScheme::width(int i) const { return std::pow(xi_, i) * std::pow(1 + delta_ / 3, shift_); }

int BallCarvingScheme::base_scale(int i) const { return ((i % gamma_) + gamma_) % gamma_; }

void BallCarvingScheme::extend(int j, int count) const {
    auto& list = centers_[j];
    if (static_cast<long long>(list.size()) + count > budget_cap)
        throw Error("scheme: center budget exhausted at base scale " + std::to_string(j));
    auto it = streams_.find(j);
    if (it == streams_.end()) it = streams_.emplace(j, make_rng(seed_, "centers", static_cast<uint64_t>(shift_) * 1000003ULL + j)).first;
    double side = 4 * width(j);
    std::uniform_real_distribution<double> U(0, side);
    for (int c = 0; c < count; ++c) {
        std::vector<double> v(d_);
        for (auto& x : v) x = U(it->second);
        list.push_back(std::move(v));
    }
}

std::vector<double> BallCarvingScheme::center(int i, int c) const {
    int j = base_scale(i);
    int k = (i - j) / gamma_;
    double f = std::pow(xi_, static_cast<double>(k) * gamma_);
    std::vector<double> v = centers_.at(j).at(c);
    for (auto& x : v) x *= f;
    return v;
}

namespace {

// Is x covered by the lattice translate of center b (scaled by f) at width w?
bool covers(std::span<const double> x, const std::vector<double>& b, double f, double w, double p,
            std::vector<int>* lattice) {
    double four_w = 4 * w, acc = 0, lim = p == 2 ? w * w : std::pow(w, p);
    int d = static_cast<int>(x.size());
    for (int k = 0; k < d; ++k) {
        double diff = x[k] - f * b[k];
        double u = std::nearbyint(diff / four_w);
        double r = std::abs(diff - four_w * u);
        acc += p == 2 ? r * r : (p == 1 ? r : std::pow(r, p));
        if (acc > lim) return false;
    }
    if (lattice) {
        lattice->resize(d);
        for (int k = 0; k < d; ++k) (*lattice)[k] = static_cast<int>(std::nearbyint((x[k] - f * b[k]) / four_w));
    }
    return true;
}

std::pair<double, double> min_max_dist(const PointSet& ps, double p) {
    double mn = kInf, mx = 0;
    for (int a = 0; a < ps.size(); ++a)
        for (int b = a + 1; b < ps.size(); ++b) {
            double d = lp_distance(ps[a], ps[b], p);
            if (d > 0) mn = std::min(mn, d);
            mx = std::max(mx, d);
        }
    return {mn, mx};
}

}  // namespace

ScaleClustering carve_scale(const PointSet& ps, const BallCarvingScheme& s, int i) {
    if (ps.dim() != s.dim()) throw Error("carve_scale: dimension mismatch");
    ScaleClustering out;
    out.w = s.width(i);
    int j = s.base_scale(i);
    int k = (i - j) / s.gamma();
    double f = std::pow(s.xi(), static_cast<double>(k) * s.gamma());
    int n = ps.size();
    long long initial = (1LL << std::min(s.dim(), 16)) * std::max(1, static_cast<int>(std::ceil(std::log2(std::max(n, 2)))));
    if (s.center_count_or_zero(j) == 0) s.extend(j, static_cast<int>(std::min<long long>(initial, s.budget_cap)));
    out.key.resize(n);
    for (int x = 0; x < n; ++x) {
        int c = 0;
        while (true) {
            const auto& list = s.base_centers(j);
            int cnt = static_cast<int>(list.size());
            bool found = false;
            for (; c < cnt; ++c)
                if (covers(ps[x], list[c], f, out.w, s.p(), &out.key[x].lattice)) {
                    found = true;
                    break;
                }
            if (found) break;
            // Coverage failure: double the budget.
            s.extend(j, cnt);
        }
        out.key[x].center = c;
    }
    return out;
}

ScaleRange scale_range_from(double mn, double mx, const BallCarvingScheme& s) {
    if (std::isinf(mn) || mx <= 0) throw Error("scale range: need two distinct points");
    double c = std::pow(1 + s.delta() / 3, s.shift());
    double L = std::log(s.xi());
    // Largest i with 2 w_i < mn.
    int lo = static_cast<int>(std::floor(std::log(mn / (2 * c)) / L)) + 1;
    while (2 * s.width(lo) >= mn) --lo;
    while (2 * s.width(lo + 1) < mn) ++lo;
    // Smallest i with w_i >= mx.
    int hi = static_cast<int>(std::ceil(std::log(mx / c) / L)) - 1;
    while (s.width(hi) < mx) ++hi;
    while (s.width(hi - 1) >= mx) --hi;
    return {lo, hi};
}

ScaleRange ordering_scale_range(const PointSet& ps, const BallCarvingScheme& s) {
    auto [mn, mx] = min_max_dist(ps, s.p());
    return scale_range_from(mn, mx, s);
}

Ordering ordering_from_scheme(const PointSet& ps, const BallCarvingScheme& s, std::optional<ScaleRange> range) {
    int n = ps.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (n < 2) return Ordering(perm, n);
    auto [mn, mx] = range ? std::pair<double, double>{0, 0} : min_max_dist(ps, s.p());
    if (!range && std::isinf(mn)) return Ordering(perm, n);  // all points identical
    ScaleRange r = range ? *range : scale_range_from(mn, mx, s);
    // Scales strictly between the singleton floor and the root cluster.
    std::vector<std::vector<int>> rank;
    for (int i = r.i_max - 1; i > r.i_min; --i) {
        ScaleClustering sc = carve_scale(ps, s, i);
        std::vector<int> idx(n);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return sc.key[a] < sc.key[b]; });
        std::vector<int> rk(n);
        int cur = 0;
        for (int q = 0; q < n; ++q) {
            if (q > 0 && sc.key[idx[q]] != sc.key[idx[q - 1]]) ++cur;
            rk[idx[q]] = cur;
        }
        rank.push_back(std::move(rk));
    }
    std::sort(perm.begin(), perm.end(), [&](int a, int b) {
        for (auto& rk : rank)
            if (rk[a] != rk[b]) return rk[a] < rk[b];
        return a < b;
    });
    return Ordering(perm, n);
}

OrderingFamily build_triangle_lso(const PointSet& ps, const TriangleParams& prm, int m, uint64_t seed) {
    int d = ps.dim(), n = ps.size();
    if (prm.p == 2 && prm.t > 2 * std::sqrt(static_cast<double>(d)) * (1 + 1e-12))
        throw Error("build_triangle_lso: t must be at most 2 sqrt(d) for p = 2");
    if (m < 1) throw Error("build_triangle_lso: m must be positive");
    OrderingFamily fam;
    fam.kind = LsoKind::Triangle;
    fam.n = n;
    fam.rho = (1 + prm.delta) * prm.t;
    auto [mn, mx] = min_max_dist(ps, prm.p);
    if (n < 2 || std::isinf(mn)) {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        fam.orderings.emplace_back(perm, n);
        return fam;
    }
    int S = triangle_shift_count(d, prm.p, prm.t, prm.delta);
    for (int sh = 0; sh < S; ++sh)
        for (int r = 0; r < m; ++r) {
            BallCarvingScheme scheme(d, prm.p, prm.t, prm.delta, sh, derive_seed(seed, "scheme", static_cast<uint64_t>(sh) * m + r));
            fam.orderings.push_back(ordering_from_scheme(ps, scheme, scale_range_from(mn, mx, scheme)));
        }
    return fam;
}

VerifiedTriangleLso build_verified_triangle_lso(const PointSet& ps, const TriangleParams& prm, uint64_t seed,
                                                int max_doublings) {
    VerifiedTriangleLso out;
    int m0 = triangle_initial_m(ps.dim(), prm.t, ps.size());
    LpMetric metric(ps, prm.p);
    MatrixMetric mat = MatrixMetric::from(metric);
    for (int round = 0; round <= max_doublings; ++round) {
        out.m = m0 << round;
        out.rounds = round;
        out.family = build_triangle_lso(ps, prm, out.m, derive_seed(seed, "round", round));
        out.report = verify_triangle(out.family, mat);
        if (out.report.pass()) break;
    }
    return out;
}

namespace {

// Uniform point in the lp ball of radius R centered at c (generalized Gaussian method).
void sample_lp_ball(Rng& rng, int d, double p, double R, double c0, std::vector<double>& out) {
    std::gamma_distribution<double> G(1.0 / p, 1.0);
    std::exponential_distribution<double> E(1.0);
    std::bernoulli_distribution sign(0.5);
    double s = 0;
    out.resize(d);
    for (int k = 0; k < d; ++k) {
        double g = G(rng);
        double y = std::pow(g, 1.0 / p);
        out[k] = sign(rng) ? y : -y;
        s += g;  // |y|^p
    }
    double scale = R / std::pow(s + E(rng), 1.0 / p);
    for (auto& x : out) x *= scale;
    out[0] += c0;
}

bool in_ball(const std::vector<double>& x, double p, double R, double c0) {
    double acc = 0;
    for (size_t k = 0; k < x.size(); ++k) {
        double v = std::abs(k == 0 ? x[k] - c0 : x[k]);
        acc += p == 2 ? v * v : std::pow(v, p);
    }
    return acc <= (p == 2 ? R * R : std::pow(R, p));
}

}  // namespace

VolumeRatioEstimate estimate_volume_ratio(int d, double R, double sep, double p, long long samples, uint64_t seed) {
    if (d < 1 || !(R > 0) || !(sep >= 0) || !(p >= 1)) throw Error("volume ratio: bad parameters");
    if (samples < 10000) throw Error("volume ratio: at least 10^4 samples required");
    VolumeRatioEstimate e;
    e.d = d;
    e.R = R;
    e.separation = sep;
    e.p = p;
    e.samples = samples;
    if (sep >= 2 * R) return e;  // disjoint or tangent
    if (sep == 0) {
        e.estimate = 1;
        return e;
    }
    // Mixture proposal: pick a ball, sample uniformly in it, accept with
    // probability 1/(number of balls containing the point). Accepted samples
    // are uniform on the union.
    Rng rng = make_rng(seed, "volume");
    std::bernoulli_distribution coin(0.5);
    std::vector<double> x;
    for (long long i = 0; i < samples; ++i) {
        bool first = coin(rng);
        sample_lp_ball(rng, d, p, R, first ? 0 : sep, x);
        bool both = in_ball(x, p, R, first ? sep : 0);
        if (both && coin(rng)) continue;
        ++e.union_hits;
        if (both) ++e.inter_hits;
    }
    if (e.union_hits > 0) {
        double q = static_cast<double>(e.inter_hits) / e.union_hits;
        e.estimate = q;
        e.stderr_ = std::sqrt(std::max(q * (1 - q), 0.0) / e.union_hits);
    }
    return e;
}

double lens_ratio_2d(double R, double s) {
    if (s >= 2 * R) return 0;
    double inter = 2 * R * R * std::acos(s / (2 * R)) - 0.5 * s * std::sqrt(4 * R * R - s * s);
    double uni = 2 * M_PI * R * R - inter;
    return inter / uni;
}

}  // namespace lso
