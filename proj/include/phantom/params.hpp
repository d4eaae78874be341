#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace phantom {

/// How Maker's "uniform edge" draws treat edges she already knows about.
enum class Sampling : std::uint8_t {
  /// Exclude her own edges and revealed Breaker edges.
  KnowledgeAware,
  /// Exclude only her own edges (they cannot be submitted); revealed Breaker
  /// edges may be drawn again.
  Strict,
};

/// Every epsilon and sub-polynomial threshold the Maker strategies use,
/// resolved to integers. Logarithms are natural; log log n floors at 1;
/// lengths and caps round up and are at least 1.
struct StrategyParams {
  int n = 0, a = 1, b = 1, k = 1;
  Sampling sampling = Sampling::KnowledgeAware;

  double ln_n = 0;
  double lnln_n = 1;

  // Mindegree-k, b > 2a/k.
  double mindeg_large_eps = 0;
  std::int64_t mindeg_large_phase_len = 1;
  std::int64_t mindeg_large_phase_rounds = 1;

  // Mindegree-k, b <= 2a/k.
  double mindeg_small_eps = 0;
  double mindeg_small_stage1_size = 0;  ///< Stage I runs while |V_<k| exceeds this.
  std::int64_t mindeg_small_repair_cap = 1;
  std::int64_t mindeg_small_stage2_rounds = 1;

  // Perfect matching.
  double pm_eps = 0;
  std::int64_t pm_stage1_steps = 0;
  std::int64_t pm_y_draw_cap = 1;
  std::int64_t pm_round_cap = 1;
  std::int64_t pm_small_choice_cap = 1;
  std::int64_t pm_pairs_per_side = 1;
  std::int64_t pm_join_draws = 1;

  // Connectivity, b > 2a.
  double conn_large_eps = 0;
  std::int64_t conn_large_stage_len = 1;
  std::int64_t conn_large_edge_choices = 1;
  std::int64_t conn_large_round_cap = 1;

  // Connectivity, b <= 2a.
  std::int64_t conn_small_stage1_rounds = 1;
  double conn_small_size2_threshold = 0;  ///< Branch (i) needs at least this many size-2 components.
  std::int64_t conn_small_stage_rounds = 1;

  // Hamiltonicity.
  std::int64_t ham_star_size = 1;
  std::int64_t ham_pair_attempts = 1;
  std::int64_t ham_round_cap = 1;

  static std::int64_t up(double x) {
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(x - 1e-9)));
  }

  static StrategyParams resolve(int n, int a, int b, int k, Sampling sampling = Sampling::KnowledgeAware) {
    StrategyParams p;
    p.n = n;
    p.a = a;
    p.b = b;
    p.k = k;
    p.sampling = sampling;
    const double dn = n, da = a, db = b, dk = k;
    p.ln_n = std::log(dn);
    p.lnln_n = std::max(1.0, std::log(std::max(p.ln_n, 1.0)));

    p.mindeg_large_eps = da / (20.0 * dk * db);
    p.mindeg_large_phase_len = up(p.mindeg_large_eps * dn);
    p.mindeg_large_phase_rounds = up(2.0 * dk * p.mindeg_large_eps * dn / da);

    p.mindeg_small_eps = 1.0 / ((10.0 * da) * (10.0 * da));
    p.mindeg_small_stage1_size = dn / p.ln_n;
    p.mindeg_small_repair_cap = up(std::min(std::pow(p.ln_n, 10.0), 9e18));
    p.mindeg_small_stage2_rounds = up(p.mindeg_small_eps * dn);

    p.pm_eps = da / (10.0 * db);
    p.pm_stage1_steps = std::max<std::int64_t>(0, n / 2 - up(std::pow(dn, 0.7)));
    p.pm_y_draw_cap = up(8.0 * p.ln_n);
    p.pm_round_cap = up(dn / (2.0 * da) + std::pow(dn, 0.99));
    p.pm_small_choice_cap = up(0.5 * std::pow(dn, 0.7));
    p.pm_pairs_per_side = up(std::pow(dn, 0.1));
    p.pm_join_draws = up(std::pow(dn, 0.1));

    p.conn_large_eps = da / (8.0 * db);
    p.conn_large_stage_len = up(p.conn_large_eps * (dn - 1.0));
    p.conn_large_edge_choices = up(std::pow(dn, 0.2));
    p.conn_large_round_cap = up(1.1 * dn / da);

    p.conn_small_stage1_rounds = up(dn / (2.0 * da) + std::pow(dn, 0.9));
    p.conn_small_size2_threshold = std::pow(dn, 2.0 / 3.0);
    p.conn_small_stage_rounds = up(1.1 * dn / (4.0 * da));

    p.ham_star_size = up(da / (20.0 * db) * p.ln_n * p.lnln_n);
    p.ham_pair_attempts = up(2.0 * p.ln_n);
    p.ham_round_cap = up(dn / da + std::pow(dn, 0.9));
    return p;
  }
};

}  // namespace phantom
