#pragma once

#include <cstddef>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "blotto/cdf.hpp"
#include "blotto/equilibrium.hpp"
#include "blotto/game.hpp"
#include "blotto/payoff.hpp"
#include "blotto/random.hpp"

namespace blotto {

// ---------------------------------------------------------------------------
// Inverse-CDF machinery

double inverse_cdf(const Cdf& h, double p);

/// ∫_0^1 H^{-1}(p) dp; equals the mean of H.
double inverse_cdf_integral(const Cdf& h);

/// E_{X~H}[M(X)]: the expected utility of the deterministic strategy H^{-1}
/// against opponents whose pointwise max has law M. Requires M atomless and
/// E_H[X] = 1 (to 1e-9).
double deviation_payoff_from_marginal(const Cdf& h, const Cdf& m);

/// ∫ M(ψ(x)) dv(x): payoff of ψ against fair opponents whose pointwise max
/// has law M everywhere.
double payoff_against_law(const Bid& psi, const Cdf& m, const GameSpec& g);

/// The equilibrium marginal (k/Υ)·r·Beta(1/(k-1), 1) as a Cdf.
Cdf equilibrium_marginal_cdf(std::size_t k, double upsilon = 1.0, double ratio = 1.0);

// ---------------------------------------------------------------------------
// Kolmogorov-Smirnov

struct KsReport {
  std::size_t n = 0;
  double distance = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double x = 0.0;
};

/// Asymptotic 1% critical value of the one-sample KS statistic.
inline double ks_threshold(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

/// sup_t |F_n(t) - F(t)| for a continuous reference F. `samples` is sorted in place.
double ks_distance(std::vector<double>& samples, const std::function<double(double)>& cdf);

KsReport ks_marginal_test(const StrategySource& source, const GameSpec& g, double x, std::size_t n,
                          const RngStream& rng);

// ---------------------------------------------------------------------------
// Best-response probing

struct Probe {
  std::string label;
  Bid bid;
};

/// The k strategies of a profile. `equilibrium` marks equilibrium-sampler sources, for
/// which deviations are scored by the exact oracle; `symmetric` marks k copies
/// of one source, so probing a single seat is enough.
struct ProfileSources {
  std::vector<StrategySource> players;
  bool equilibrium = false;
  bool symmetric = false;

  static ProfileSources equilibrium_profile(const GameSpec& g, const EquipartitionMap& pi);
  static ProfileSources repeated(const StrategySource& s, std::size_t k);
  static ProfileSources of(std::vector<StrategySource> players);
};

/// Constant bids c = 0.25, 0.5, ..., 2k (above the budget, c is played on a
/// prefix of β-mass 1/c), `random_steps` random feasible step bids with 1-8
/// pieces, and H^{-1} of the opponents' pooled empirical marginal.
std::vector<Probe> default_probe_family(const GameSpec& g, const ProfileSources& sources, const RngStream& rng,
                                        std::size_t random_steps = 50);

Probe random_step_probe(const GameSpec& g, RngStream& rng, std::size_t max_pieces = 8);

/// ψ(x) = H^{-1}(β([0, x))) averaged over cells of equal β-mass (battlefields
/// on discrete grounds), so the budget integral equals E_H[X].
Bid inverse_cdf_strategy(const Cdf& h, const GameSpec& g, std::size_t cells = 64);

enum class Verdict { Consistent, Refuted };

struct ProbeOutcome {
  std::string label;
  std::size_t player = 0;
  double payoff = 0.0;
  double std_error = 0.0;
  double gap = 0.0;  // payoff - Υ/k
};

struct EquilibriumCertificate {
  std::size_t k = 0;
  double upsilon = 0.0;
  double fair_share = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> payoff_mean;
  std::vector<double> payoff_std_error;
  std::vector<ProbeOutcome> probes;
  double max_gap = 0.0;
  double max_gap_std_error = 0.0;
  std::vector<KsReport> marginals;
  Verdict verdict = Verdict::Consistent;
  std::optional<Probe> witness;
  std::optional<ProbeOutcome> witness_outcome;
};

/// Scores every probe as a unilateral deviation. A profile is refuted only by
/// a probe whose payoff beats both Υ/k and the deviating player's own payoff
/// by more than 3 standard errors. "Consistent" means no probe refuted it.
EquilibriumCertificate best_response_probe(const ProfileSources& sources, const GameSpec& g,
                                           const std::vector<Probe>& probes, std::size_t n, const RngStream& rng);

/// best_response_probe plus KS marginal tests of player 0 at `points`
/// (skipped unless k >= 2).
EquilibriumCertificate certify(const ProfileSources& sources, const GameSpec& g, const std::vector<Probe>& probes,
                               std::size_t n, const RngStream& rng, std::span<const double> points);

// ---------------------------------------------------------------------------
// Exploits that refute non-equilibrium marginals

/// Ψ_δ: zero the prefix of β-mass δ, lift pieces sitting exactly on the atom
/// to a + ε, then top up to the full budget on the highest-ratio piece.
struct AtomExploit {
  double atom = 0.0;
  double eta = 0.0;
  double delta = 0.0;
  /// ((k-1)/k)(1-δ)η^k − δ/k, times Υ.
  double gain_bound = 0.0;
  GameSpec game;

  Bid apply(const Bid& psi) const;
  StrategySource wrap(StrategySource base) const;
};

AtomExploit exploit_atom_strategy(const GameSpec& g, double atom, double eta, double delta);

double atom_exploit_bound(std::size_t k, double eta, double delta);

struct MassMove {
  Cdf h;
  double mu = 0.0;
  double epsilon = 0.0;
};

/// H_δ: the mass μ of G on (b, b+δ] is split between atoms at b+Δ and a+ε,
/// with ε solved so that E_H[X] = 1.
MassMove exploit_mass_move_cdf(const Cdf& g_cdf, double a, double b, double big_delta, double delta);

struct StepSwap {
  Bid swapped;
  Bid baseline;  // G^{-1} on the same grid, without the swap
  double p_lo = 0.0;
  double p_hi = 0.0;
};

/// ψ_{a,b,ε}: G^{-1} with the stretch where it lies in (a-ε, a+ε) replaced by
/// a 0/b step of the same integral. Both bids are G^{-1} averaged over a grid
/// of `cells` equal cells that also has p_lo and p_hi as breakpoints.
StepSwap exploit_step_swap(const Cdf& g_cdf, double a, double b, double eps, const GameSpec& g,
                           std::size_t cells = 4096);

// ---------------------------------------------------------------------------
// Lotto soft budget

struct LottoCheck {
  bool pass = false;
  double mean = 0.0;
  double std_error = 0.0;
  double budget = 0.0;
  std::size_t n = 0;
};

/// Passes iff the mean budget integral is at most B + 3·(std error), with the
/// usual 1e-9 slack.
LottoCheck lotto_budget_check(const StrategySource& source, const GameSpec& g, std::size_t player, std::size_t n,
                              const RngStream& rng);

}  // namespace blotto
