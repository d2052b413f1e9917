#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

#include "lso/euclid.hpp"

namespace lso {

// Quadtree over [0,2)^dp with d+1 diagonal shifts j/(dp+1) (dp = d rounded up
// to even). Cells at levels L = r (mod m) are split into 2^(m dp) subcells
// at level L+m, visited in the order of a Walecki Hamiltonian path; every
// pair of subcells is adjacent on exactly one of the 2^(m dp)/2 paths.
GridLso::GridLso(const PointSet& ps, double eps, uint64_t seed, int extra_levels)
    : n_(ps.size()), d_(ps.dim()), eps_(eps) {
    if (!(eps > 0 && eps < 0.5)) throw Error("grid lso: eps must lie in (0, 1/2)");
    dp_ = d_ + (d_ & 1);
    double need = 2 * std::sqrt(static_cast<double>(d_)) * (dp_ + 1) / eps;
    m_ = static_cast<int>(std::ceil(std::log2(need))) + extra_levels;
    if (static_cast<long long>(m_) * dp_ > 48)
        throw Error("grid lso: dimension too large for eps (2^" + std::to_string(m_ * dp_) + " cells per node)");
    cells_ = 1LL << (m_ * dp_);

    std::vector<double> lo(d_, kInf);
    double extent = 0;
    for (int x = 0; x < n_; ++x)
        for (int k = 0; k < d_; ++k) lo[k] = std::min(lo[k], ps[x][k]);
    for (int x = 0; x < n_; ++x)
        for (int k = 0; k < d_; ++k) extent = std::max(extent, ps[x][k] - lo[k]);
    if (extent == 0) extent = 1;
    Rng rng = make_rng(seed, "grid-offset");
    std::uniform_real_distribution<double> U(0, 0.5);
    offset_.resize(dp_);
    for (auto& o : offset_) o = U(rng);
    // Isotropic scaling into [0, 1/2), then a random translate inside [0,1).
    double scale = 0.5 / (extent * (1 + 1e-9));
    norm_.assign(n_, std::vector<double>(dp_));
    for (int x = 0; x < n_; ++x)
        for (int k = 0; k < dp_; ++k) norm_[x][k] = (k < d_ ? (ps[x][k] - lo[k]) * scale : 0.0) + offset_[k];

    fam_.kind = LsoKind::Classic;
    fam_.n = n_;
    fam_.rho = eps;
    std::set<Slot> slots;
    for (int x = 0; x < n_; ++x)
        for (int y = x + 1; y < n_; ++y) slots.insert(satisfying_slot(x, y));
    if (slots.empty()) slots.insert(Slot{0, 0, 0});
    for (const Slot& s : slots) {
        index_[s] = static_cast<int>(fam_.orderings.size());
        fam_.orderings.push_back(make_ordering(s));
    }
    fam_.hint = [this](int x, int y) { return satisfying_ordering(x, y); };
}

std::vector<uint64_t> GridLso::grid_coords(int shift, int point) const {
    std::vector<uint64_t> X(dp_);
    double sh = static_cast<double>(shift) / (dp_ + 1);
    double unit = std::ldexp(1.0, kBits - 1);
    for (int k = 0; k < dp_; ++k) {
        double c = norm_[point][k] + sh;
        X[k] = std::min<uint64_t>(static_cast<uint64_t>(c * unit), (1ULL << kBits) - 1);
    }
    return X;
}

uint64_t GridLso::subcell_index(const std::vector<uint64_t>& X, int level) const {
    uint64_t mask = (1ULL << m_) - 1, idx = 0;
    int low = kBits - level - m_;
    for (int k = 0; k < dp_; ++k) {
        uint64_t digit = low >= 0 ? (X[k] >> low) & mask : (X[k] << (-low)) & mask;
        idx |= digit << (m_ * k);
    }
    return idx;
}

long long GridLso::walecki_position(long long i, uint64_t v) const {
    long long K = cells_;
    long long delta = (static_cast<long long>(v) - i) % K;
    if (delta < 0) delta += K;
    if (delta == 0) return 0;
    if (delta <= K / 2) return 2 * delta - 1;
    return 2 * (K - delta);
}

GridLso::Slot GridLso::satisfying_slot(int x, int y) const {
    int best_shift = 0, best_level = -1;
    std::vector<uint64_t> bx, by;
    for (int j = 0; j <= dp_; ++j) {
        auto X = grid_coords(j, x), Y = grid_coords(j, y);
        int w = 0;
        for (int k = 0; k < dp_; ++k) w = std::max(w, static_cast<int>(std::bit_width(X[k] ^ Y[k])));
        int level = kBits - w;  // deepest common cell
        if (level > best_level) {
            best_level = level;
            best_shift = j;
            bx = std::move(X);
            by = std::move(Y);
        }
    }
    Slot s{best_shift, best_level % m_, 0};
    uint64_t a = subcell_index(bx, best_level), b = subcell_index(by, best_level);
    s.pattern = static_cast<long long>(((a + b) % static_cast<uint64_t>(cells_)) / 2);
    return s;
}

int GridLso::satisfying_ordering(int x, int y) const {
    auto it = index_.find(satisfying_slot(x, y));
    return it == index_.end() ? -1 : it->second;
}

Ordering GridLso::make_ordering(const Slot& s) const {
    std::vector<std::vector<long long>> key(n_);
    for (int x = 0; x < n_; ++x) {
        auto X = grid_coords(s.shift, x);
        for (int L = s.residue - m_; L < kBits; L += m_) key[x].push_back(walecki_position(s.pattern, subcell_index(X, L)));
    }
    std::vector<int> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int a, int b) { return key[a] != key[b] ? key[a] < key[b] : a < b; });
    return Ordering(std::move(perm), n_);
}

VerifiedGridLso build_verified_grid_lso(const PointSet& ps, double eps, uint64_t seed, int max_rounds) {
    VerifiedGridLso out;
    LpMetric metric(ps, 2);
    MatrixMetric mat = MatrixMetric::from(metric);
    for (int round = 0; round < max_rounds; ++round) {
        out.rounds = round;
        out.lso = std::make_unique<GridLso>(ps, eps, derive_seed(seed, "grid-round", round), round);
        out.report = verify_classic(out.lso->family(), mat);
        if (out.report.pass()) break;
    }
    return out;
}

}  // namespace lso
