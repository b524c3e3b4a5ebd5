#ifndef HYPGRAFT_MOEBIUS_HPP
#define HYPGRAFT_MOEBIUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypgraft/common.hpp"

namespace hypgraft {

// Real 2x2 matrix acting on the upper half-plane, kept unimodular.
// A map and its negative act identically, so equality and hashing go
// through canonical_sign().
class MoebiusMap {
  public:
    MoebiusMap() : a_(1), b_(0), c_(0), d_(1) {}

    MoebiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
        double det = a_ * d_ - b_ * c_;
        if (!std::isfinite(det) || det <= 0.0)
            throw std::invalid_argument("MoebiusMap: determinant must be positive and finite");
        double s = std::sqrt(det);
        a_ /= s; b_ /= s; c_ /= s; d_ /= s;
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }

    complexd operator()(const complexd& zeta) const {
        if (!finite(zeta) || !(zeta.imag() > 0.0))
            throw std::domain_error("MoebiusMap: point must lie in the upper half-plane");
        return (a_ * zeta + b_) / (c_ * zeta + d_);
    }

    // Boundary action (extended real line); infinity handled explicitly.
    double boundary(double x) const {
        if (std::isinf(x)) return c_ == 0.0 ? std::numeric_limits<double>::infinity() : a_ / c_;
        double den = c_ * x + d_;
        if (den == 0.0) return std::numeric_limits<double>::infinity();
        return (a_ * x + b_) / den;
    }

    MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }

    double trace() const { return a_ + d_; }

    // Flip signs so the first nonzero of (c, d, a) is positive.
    MoebiusMap canonical_sign() const {
        double lead = c_ != 0.0 ? c_ : (d_ != 0.0 ? d_ : a_);
        if (lead < 0.0) {
            MoebiusMap m = *this;
            m.a_ = -m.a_; m.b_ = -m.b_; m.c_ = -m.c_; m.d_ = -m.d_;
            return m;
        }
        return *this;
    }

    static MoebiusMap translation(double x) { return MoebiusMap(1, x, 0, 1); }
    static MoebiusMap scaling(double s) {
        if (!(s > 0.0)) throw std::invalid_argument("scaling: factor must be positive");
        return MoebiusMap(std::sqrt(s), 0, 0, 1.0 / std::sqrt(s));
    }
    static MoebiusMap inversion() { return MoebiusMap(0, -1, 1, 0); }

  private:
    double a_, b_, c_, d_;
};

inline MoebiusMap compose(const MoebiusMap& m, const MoebiusMap& n) {
    return MoebiusMap(m.a() * n.a() + m.b() * n.c(), m.a() * n.b() + m.b() * n.d(),
                      m.c() * n.a() + m.d() * n.c(), m.c() * n.b() + m.d() * n.d());
}

inline bool same_map(const MoebiusMap& m, const MoebiusMap& n, double tol = 1e-12) {
    MoebiusMap p = m.canonical_sign(), q = n.canonical_sign();
    return std::abs(p.a() - q.a()) <= tol && std::abs(p.b() - q.b()) <= tol &&
           std::abs(p.c() - q.c()) <= tol && std::abs(p.d() - q.d()) <= tol;
}

enum class GroupKind { ParabolicCylinder, GammaTwo, ExplicitGenerators };

struct CuspRecord {
    std::string label;
    MoebiusMap normalizer;  // sigma with sigma(infinity) = cusp point
    double width_scale = 1.0;
};

struct FuchsianGroupSpec {
    GroupKind kind = GroupKind::ParabolicCylinder;
    std::vector<CuspRecord> cusps;
    std::vector<MoebiusMap> generators;  // ExplicitGenerators only

    static FuchsianGroupSpec parabolic_cylinder() {
        FuchsianGroupSpec s;
        s.kind = GroupKind::ParabolicCylinder;
        s.cusps = {CuspRecord{"inf", MoebiusMap(), 1.0}};
        return s;
    }

    // The three classical cusp classes at infinity, 0 and 1, each of width 2.
    static FuchsianGroupSpec gamma_two() {
        FuchsianGroupSpec s;
        s.kind = GroupKind::GammaTwo;
        MoebiusMap scale2 = MoebiusMap::scaling(2.0);
        s.cusps.push_back(CuspRecord{"inf", scale2, 2.0});
        s.cusps.push_back(CuspRecord{"zero", compose(MoebiusMap::inversion(), scale2), 2.0});
        s.cusps.push_back(CuspRecord{"one", compose(MoebiusMap(1, 0, 1, 1), scale2), 2.0});
        return s;
    }
};

namespace detail {

inline bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) <= tol;
}

inline bool integer_parity(double x, int parity, double tol = 1e-9) {
    if (!near_integer(x, tol)) return false;
    long long n = static_cast<long long>(std::llround(x));
    return ((n % 2 + 2) % 2) == parity;
}

// Entry pattern for the level-2 group: integer entries, odd diagonal,
// even off-diagonal, up to overall sign.
inline bool gamma_two_member(const MoebiusMap& m, double tol = 1e-9) {
    MoebiusMap p = m.canonical_sign();
    return integer_parity(p.a(), 1, tol) && integer_parity(p.d(), 1, tol) &&
           integer_parity(p.b(), 0, tol) && integer_parity(p.c(), 0, tol);
}

}  // namespace detail

// Check that each cusp's normalizer conjugates the unit translation into the
// group, i.e. the cusp stabilizer pulls back to integer translations.
inline void validate_group_spec(const FuchsianGroupSpec& spec) {
    for (const auto& cusp : spec.cusps) {
        if (!(cusp.width_scale > 0.0))
            throw std::invalid_argument("cusp '" + cusp.label + "': width_scale must be positive");
        MoebiusMap stab = compose(compose(cusp.normalizer, MoebiusMap::translation(1.0)),
                                  cusp.normalizer.inverse());
        switch (spec.kind) {
            case GroupKind::ParabolicCylinder: {
                // Stabilizer of the single cusp is the whole group.
                if (std::abs(stab.c()) > 1e-9 || !detail::near_integer(stab.b() / stab.a()) ||
                    std::abs(std::abs(stab.a()) - 1.0) > 1e-9)
                    throw std::invalid_argument("cusp '" + cusp.label +
                                                "': stabilizer is not an integer translation");
                break;
            }
            case GroupKind::GammaTwo:
                if (!detail::gamma_two_member(stab))
                    throw std::invalid_argument("cusp '" + cusp.label +
                                                "': stabilizer image not in the level-2 group");
                break;
            case GroupKind::ExplicitGenerators:
                break;  // no membership test available
        }
    }
}

// Translation classes of the coset space, tagged by their bottom rows.
// A row (c, d) with 0 <= d < c stands for the family (c, d + cn), n integer;
// the evaluators sum the translates in closed form.
struct BottomRowSet {
    std::vector<std::pair<long long, long long>> rows;
    long long cutoff = 0;
};

inline BottomRowSet enumerate_bottom_rows(const FuchsianGroupSpec& spec, const CuspRecord& cusp,
                                          long long C) {
    (void)cusp;
    if (C < 1) throw std::invalid_argument("enumerate_bottom_rows: cutoff must be >= 1");
    BottomRowSet set;
    set.cutoff = C;
    set.rows.emplace_back(0, 1);
    switch (spec.kind) {
        case GroupKind::ParabolicCylinder:
            break;  // stabilizer is the whole group
        case GroupKind::GammaTwo:
            for (long long c = 2; c <= C; c += 2)
                for (long long d = 1; d < c; d += 2)
                    if (std::gcd(c, d) == 1) set.rows.emplace_back(c, d);
            break;
        case GroupKind::ExplicitGenerators:
            throw std::invalid_argument(
                "enumerate_bottom_rows: coset enumeration unsupported for explicit generators");
    }
    std::sort(set.rows.begin(), set.rows.end());
    return set;
}

struct CuspNormalization {
    FuchsianGroupSpec spec;    // conjugated spec; distinguished cusp now at infinity
    MoebiusMap to_normalized;  // original chart -> normalized chart
    MoebiusMap from_normalized;
    std::size_t cusp_index = 0;
};

inline CuspNormalization cusp_normalize(const FuchsianGroupSpec& spec, const CuspRecord& cusp) {
    if (!(cusp.width_scale > 0.0))
        throw std::invalid_argument("cusp_normalize: width_scale must be positive");
    std::size_t idx = spec.cusps.size();
    for (std::size_t i = 0; i < spec.cusps.size(); ++i)
        if (same_map(spec.cusps[i].normalizer, cusp.normalizer) &&
            spec.cusps[i].label == cusp.label) {
            idx = i;
            break;
        }
    if (idx == spec.cusps.size())
        throw std::invalid_argument("cusp_normalize: cusp does not belong to the spec");

    CuspNormalization out;
    out.cusp_index = idx;
    out.from_normalized = cusp.normalizer;
    out.to_normalized = cusp.normalizer.inverse();
    out.spec = spec;
    for (std::size_t i = 0; i < spec.cusps.size(); ++i) {
        out.spec.cusps[i].normalizer = compose(out.to_normalized, spec.cusps[i].normalizer);
        if (i == idx) out.spec.cusps[i].width_scale = 1.0;
    }
    // The distinguished cusp must now sit at infinity with unit translations.
    MoebiusMap stab = compose(compose(out.spec.cusps[idx].normalizer, MoebiusMap::translation(1.0)),
                              out.spec.cusps[idx].normalizer.inverse());
    if (!same_map(stab, MoebiusMap::translation(1.0), 1e-9))
        throw std::logic_error("cusp_normalize: conjugation failed to produce unit translations");
    return out;
}

}  // namespace hypgraft

#endif
