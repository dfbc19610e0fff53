#include "bfcub/driver.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "bfcub/reduce.hpp"
#include "bfcub/rule.hpp"

namespace bfcub {

std::string to_string(Status s) {
  switch (s) {
    case Status::Converged: return "converged";
    case Status::MaxIterations: return "max_iterations";
    case Status::MemoryExhausted: return "memory_exhausted";
  }
  return "unknown";
}

int Config::convergence_digits() const {
  const double d = std::ceil(std::log10(1.0 / tau_rel));
  if (!(d >= 1.0)) return 1;
  if (d > 17.0) return 17;
  return static_cast<int>(d);
}

void Config::validate() const {
  if (!(tau_rel > 0.0)) throw std::invalid_argument("Config: tau_rel must be > 0");
  if (!(tau_abs >= 0.0)) throw std::invalid_argument("Config: tau_abs must be >= 0");
  if (it_max < 1) throw std::invalid_argument("Config: it_max must be >= 1");
  if (init_subdiv == 0 && max_regions < 2 * init_target)
    throw std::invalid_argument("Config: max_regions must be >= 2 * init_target");
}

bool check_termination(const Accumulators& acc, double tau_rel, double tau_abs) {
  const double err = acc.errorest();
  return err <= std::fabs(acc.estimate()) * tau_rel || err <= tau_abs;
}

bool digits_converged(double v_prev, double v_curr, int digits) {
  if (!std::isfinite(v_prev) || !std::isfinite(v_curr)) return false;
  if (v_prev == 0.0 && v_curr == 0.0) return true;
  if ((v_prev < 0.0) != (v_curr < 0.0)) return false;
  if (digits < 1) digits = 1;
  if (digits > 17) digits = 17;
  char a[40], b[40];
  std::snprintf(a, sizeof a, "%.*e", digits - 1, v_prev);
  std::snprintf(b, sizeof b, "%.*e", digits - 1, v_curr);
  return std::strcmp(a, b) == 0;
}

namespace {

struct MappedCtx {
  const Integrand* inner;
  const double* lo;
  const double* len;
};

double mapped_eval(const double* u, int n, void* ctx) {
  const auto* m = static_cast<const MappedCtx*>(ctx);
  double x[kMaxDim];
  for (int a = 0; a < n; ++a) x[a] = m->lo[a] + u[a] * m->len[a];
  return (*m->inner)(x, n);
}

void check_volume_conservation(const RegionBatch& batch, double finished_volume) {
  const double total = batch.total_volume() + finished_volume;
  if (std::fabs(total - 1.0) > 1e-10)
    throw std::logic_error("invariant violated: volume not conserved");
}

} // namespace

IntegrationResult integrate(const Integrand& f, const Bounds& bounds,
                            const Config& config) {
  config.validate();
  const int n = bounds.dim();

#ifdef _OPENMP
  if (config.threads > 0) omp_set_num_threads(config.threads);
#endif

  // Work on the unit cube; scale results by the domain volume at the end.
  const bool mapped = !bounds.is_unit_cube();
  const double jacobian = bounds.volume();
  std::vector<double> dom_len(n);
  for (int a = 0; a < n; ++a) dom_len[a] = bounds.upper[a] - bounds.lower[a];
  MappedCtx map_ctx{&f, bounds.lower.data(), dom_len.data()};
  const Integrand g = mapped ? Integrand{&mapped_eval, &map_ctx} : f;
  const double tau_abs = mapped ? config.tau_abs / jacobian : config.tau_abs;

  const RuleTable rule = build_rule(n);
  const int d = config.init_subdiv > 0
                    ? config.init_subdiv
                    : initial_subdivisions(n, config.init_target);
  RegionBatch batch =
      uniform_split(Bounds::unit_cube(n), d, config.max_regions);

  IntegrationResult res;
  res.regions_generated = batch.count;
  Accumulators acc;
  double prev_total = std::numeric_limits<double>::quiet_NaN();
  double prev_e_f = 0.0;
  double finished_volume = 0.0;
  const int digits = config.convergence_digits();

  const auto finish = [&](Status status, int it) {
    res.status = status;
    res.iterations = it;
    res.estimate = acc.estimate() * jacobian;
    res.errorest = acc.errorest() * jacobian;
    return res;
  };

  for (int it = 1; it <= config.it_max; ++it) {
    EvalOutput eval = evaluate_batch(g, batch, rule);
    res.eval_count += eval.eval_count;

    std::vector<double> refined;
    if (it == 1) {
      // Regions from the initial partition carry no evaluated parent.
      refined = std::move(eval.raw_errors);
    } else {
      refined.resize(batch.count);
      config.refiner(eval.estimates, eval.raw_errors, batch.parent_estimates,
                     batch.parent_errors, refined);
    }
    batch.estimates = std::move(eval.estimates);
    batch.errors = std::move(refined);
    batch.split_axis = std::move(eval.split_axes);

    ClassifyFlags flags =
        rel_err_classify(batch.estimates, batch.errors, config.tau_rel,
                         config.rel_filtering_enabled);

    acc.v = block_sum(batch.estimates);
    acc.e = block_sum(batch.errors);

    if (config.validate_invariants) check_volume_conservation(batch, finished_volume);

    if (check_termination(acc, config.tau_rel, tau_abs))
      return finish(Status::Converged, it);
    if (it == config.it_max) break; // no point producing regions never evaluated

    const std::int64_t active_count = count_flags(flags, 1);
    const bool trig_memory = 2 * active_count > config.max_regions;
    const bool trig_digits = digits_converged(prev_total, acc.estimate(), digits);
    if (trig_digits || trig_memory) {
      const ThresholdResult tr = threshold_classify(
          flags, batch.errors, acc.estimate(), acc.errorest(), acc.e,
          batch.count, config.tau_rel, config.threshold_limits);
      res.threshold_events.push_back({it, tr.success, batch.count,
                                      tr.finished_count, tr.discarded_error,
                                      tr.budget_limit});
      // Discarded error is frozen forever. A digit-triggered prune is
      // optional work, so it is dropped when freezing the additional error
      // would eat into the headroom convergence still needs. A memory prune
      // goes ahead regardless: the alternative is exhaustion.
      const bool affordable =
          acc.e_f + tr.discarded_error <=
          0.25 * config.tau_rel * std::fabs(acc.estimate());
      if (tr.success && (trig_memory || affordable)) flags = tr.flags;
    }

    if (std::getenv("BFCUB_TRACE")) {
      std::fprintf(stderr,
                   "it=%d m=%lld act=%lld v=%.6e e=%.3e v_f=%.6e e_f=%.3e "
                   "budget=%.3e trigD=%d trigM=%d\n",
                   it, (long long)batch.count, (long long)count_flags(flags, 1),
                   acc.v, acc.e, acc.v_f, acc.e_f,
                   config.tau_rel * std::fabs(acc.estimate()), (int)trig_digits,
                   (int)trig_memory);
    }
    batch.active = flags;
    FilterResult filt = filter(batch, flags);
    if (config.validate_invariants) {
      const double kept_v = block_sum(filt.kept.estimates);
      const double scale =
          std::max({1e-30, std::fabs(acc.v), std::fabs(filt.finished_estimate)});
      if (std::fabs(kept_v + filt.finished_estimate - acc.v) > 1e-10 * scale)
        throw std::logic_error("invariant violated: estimate not conserved by filter");
      if (filt.finished_error < 0.0)
        throw std::logic_error("invariant violated: negative finished error");
    }
    prev_e_f = acc.e_f;
    acc.v_f += filt.finished_estimate;
    acc.e_f += filt.finished_error;
    if (config.validate_invariants && acc.e_f < prev_e_f)
      throw std::logic_error("invariant violated: finished error decreased");
    acc.v -= filt.finished_estimate;
    acc.e -= filt.finished_error;
    finished_volume += filt.finished_volume;
    prev_total = acc.estimate();

    if (filt.kept.count == 0) {
      // Everything was classified finished without meeting the tolerance.
      return finish(Status::MaxIterations, it);
    }
    if (2 * filt.kept.count > config.max_regions)
      return finish(Status::MemoryExhausted, it);

    batch = bisect(filt.kept, config.max_regions);
    res.regions_generated += batch.count;
  }
  return finish(Status::MaxIterations, config.it_max);
}

} // namespace bfcub
