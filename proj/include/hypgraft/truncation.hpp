#ifndef HYPGRAFT_TRUNCATION_HPP
#define HYPGRAFT_TRUNCATION_HPP

#include <cmath>
#include <complex>
#include <stdexcept>

#include "hypgraft/eisenstein.hpp"
#include "hypgraft/plumbing.hpp"

namespace hypgraft {

enum class TruncationRole { DefiningCusp, RemainingCusp };

struct TruncationContext {
    PlumbingConfig config;
    TruncationRole role = TruncationRole::DefiningCusp;
};

namespace detail {

// chi arguments of the two truncation factors, in u = -2 pi Im zeta.
inline double chi_primary_arg(const PlumbingConfig& cfg, double u) { return u - cfg.log_c(); }
inline double chi_secondary_arg(const PlumbingConfig& cfg, double u) {
    return u - cfg.log_abs_t() + cfg.log_c() + cfg.cutoff.a0();
}

}  // namespace detail

// The special truncation E^# in the cusp's normalized chart.  For the cusp
// defining the series the (Im zeta)^2 mode is cut off across the primary
// band and the remainder across the secondary band; for a remaining cusp
// the whole series is cut off across the secondary band.  Both factors are
// identically one away from the collar, where E^# = E.
inline double truncate_sharp(const EisensteinEvaluator& ev, const TruncationContext& ctx,
                             const complexd& zeta) {
    if (!finite(zeta) || !(zeta.imag() > 0.0))
        throw std::domain_error("truncate_sharp: point must lie in the upper half-plane");
    double u = -two_pi * zeta.imag();
    const CutoffProfile& cut = ctx.config.cutoff;
    double chi2 = cut.chi(detail::chi_secondary_arg(ctx.config, u));
    if (ctx.role == TruncationRole::RemainingCusp)
        return chi2 == 0.0 ? 0.0 : chi2 * ev.eval_E2(zeta);
    double chi1 = cut.chi(detail::chi_primary_arg(ctx.config, u));
    double value = chi1 * sq(zeta.imag());
    if (chi2 != 0.0) value += chi2 * ev.eval_e_hat(zeta);
    return value;
}

// How one side of a plumbed pair sees a given series: the series' own cusp,
// another cusp on the same component, or a component the series was
// extended by zero onto.
enum class MeldSide { Defining, Remaining, OffComponent };

// Melding E-dagger of one Eisenstein series across a plumbing collar: the
// sum of the z-side and w-side special truncations on the identified
// annulus, each side extended by zero off its support.
class MeldedSeries {
  public:
    MeldedSeries(const PlumbingConfig& config, const EisensteinEvaluator* z_eval, MeldSide z_side,
                 const EisensteinEvaluator* w_eval, MeldSide w_side)
        : cfg_(config), z_eval_(z_eval), z_side_(z_side), w_eval_(w_eval), w_side_(w_side) {
        if (z_side_ != MeldSide::OffComponent && z_eval_ == nullptr)
            throw std::invalid_argument("MeldedSeries: z side requires an evaluator");
        if (w_side_ != MeldSide::OffComponent && w_eval_ == nullptr)
            throw std::invalid_argument("MeldedSeries: w side requires an evaluator");
    }

    const PlumbingConfig& config() const { return cfg_; }

    // Value at a point of the plumbed surface given in the z chart.
    double value_at_z(const complexd& z) const {
        double r = std::abs(z);
        if (!(r > cfg_.abs_t() && r < 1.0))
            throw std::domain_error("MeldedSeries: point outside both charts");
        return side_value(z_eval_, z_side_, zeta_of(z)) +
               side_value(w_eval_, w_side_, zeta_of(cfg_.t / z));
    }

    // Value at the same point given in the w chart (w = t/z).
    double value_at_w(const complexd& w) const {
        double r = std::abs(w);
        if (!(r > cfg_.abs_t() && r < 1.0))
            throw std::domain_error("MeldedSeries: point outside both charts");
        return side_value(w_eval_, w_side_, zeta_of(w)) +
               side_value(z_eval_, z_side_, zeta_of(cfg_.t / w));
    }

  private:
    static complexd zeta_of(const complexd& z) {
        // z = e^{2 pi i zeta} with zeta in the normalized cusp chart.
        return complexd(std::arg(z) / two_pi, -std::log(std::abs(z)) / two_pi);
    }

    double side_value(const EisensteinEvaluator* ev, MeldSide side, const complexd& zeta) const {
        if (side == MeldSide::OffComponent) return 0.0;
        TruncationContext ctx{cfg_, side == MeldSide::Defining ? TruncationRole::DefiningCusp
                                                               : TruncationRole::RemainingCusp};
        return truncate_sharp(*ev, ctx, zeta);
    }

    PlumbingConfig cfg_;
    const EisensteinEvaluator* z_eval_;
    MeldSide z_side_;
    const EisensteinEvaluator* w_eval_;
    MeldSide w_side_;
};

// Melding for the model annulus (two punctured discs plumbed): both sides
// carry the cylinder series y^2, so each melding reduces to the closed form
// chi(log(|z|/c_*)) (log|z| / 2 pi)^2 on its own side.
struct AnnulusMeldings {
    PlumbingConfig config;

    // E-dagger of the z-disc series plus the w-disc series at log-radius u.
    double sum_at(double u) const {
        const CutoffProfile& cut = config.cutoff;
        double uw = config.log_abs_t() - u;
        double chi_z = cut.chi(u - config.log_c());
        double chi_w = cut.chi(uw - config.log_c());
        return (chi_z * u * u + chi_w * uw * uw) / (4.0 * pi * pi);
    }
};

}  // namespace hypgraft

#endif
