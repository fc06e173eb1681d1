#pragma once

// Dujella-Petho reduction and the two-step campaign that brings the bound on n
// down from M_b to a few hundred.
//
// For 0 < |u gamma - v + mu| < A B^(-w) with u <= M: if p/q is a convergent of
// gamma with q > 6M and eps = ||mu q|| - M ||gamma q|| > 0, then
// w < log(A q / eps) / log B.

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "narayana/bounds.hpp"
#include "narayana/error.hpp"
#include "narayana/highprec.hpp"
#include "narayana/real_enclosure.hpp"

namespace narayana {

inline constexpr std::size_t kConvergentAttempts = 10;
inline constexpr int kMaxEscalations = 3;
inline constexpr double kEscalationFactor = 1.5;

/// Coefficients A of the three reduced inequalities.
inline constexpr long kStep1SingleA = 32;  // m = 0:  |...| < 32 alpha^-n
inline constexpr long kStep1GapA = 16;     // m >= 1: 0 < ... < 16 alpha^-(n-m)
inline constexpr long kStep2A = 27;        //         |...| < 27 alpha^-n

/// Smallest n for which the exponential estimates behind each reduced inequality apply;
/// solutions below this are never excluded by the reduction.
inline constexpr long kMinReducedN = 7;

struct ReductionInstance {
  RealEnclosure gamma_hat;
  RealEnclosure mu_hat;
  RealEnclosure A;
  RealEnclosure B;
  mpz_class M;
};

struct ReductionOutcome {
  Convergent convergent;
  RealEnclosure epsilon;
  RealEnclosure w_threshold;  // log(A q / eps) / log B
  long threshold = 0;         // ceiling of the upper end of w_threshold
  unsigned retries = 0;       // convergents rejected before this one
};

/// Reusable reduction against one irrational gamma and one M. Per-convergent
/// quantities (q, M ||gamma q||, log q) are computed once.
class DujellaPetho {
 public:
  DujellaPetho(const RealEnclosure& gamma_hat, mpz_class M, std::vector<Convergent> convergents)
      : M_(std::move(M)) {
    require(M_ >= 1, "M must be a positive integer");
    const mpz_class six_m = 6 * M_;
    auto first = std::find_if(convergents.begin(), convergents.end(), [&](const Convergent& c) { return c.q > six_m; });
    for (auto it = first; it != convergents.end() && entries_.size() < kConvergentAttempts; ++it) {
      Entry e{*it, RealEnclosure(it->q, gamma_hat.precision()), std::nullopt};
      try {
        e.m_gamma_dist = RealEnclosure(M_, gamma_hat.precision()) * nearest_int_distance(gamma_hat * e.q);
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::Ambiguity) throw;
      }
      entries_.push_back(std::move(e));
    }
    if (entries_.empty()) {
      throw Error(ErrorKind::PrecisionExhausted, "no certified convergent with q > 6M = " + six_m.get_str());
    }
  }

  /// Builds the convergent list itself (q_min = 6M).
  DujellaPetho(const RealEnclosure& gamma_hat, const mpz_class& M)
      : DujellaPetho(gamma_hat, M, irrational_convergents(gamma_hat, 6 * M)) {}

  const mpz_class& M() const { return M_; }
  std::size_t first_index() const { return entries_.front().convergent.index; }

  /// First convergent (q > 6M) with certified eps > 0; at most kConvergentAttempts are tried.
  ReductionOutcome solve(const RealEnclosure& mu_hat, const RealEnclosure& A, const RealEnclosure& B) const {
    require(A.is_positive(), "A must be positive");
    require(certainly_less(RealEnclosure(1L, B.precision()), B), "B must exceed 1");
    unsigned retries = 0;
    for (const Entry& e : entries_) {
      if (e.m_gamma_dist) {
        std::optional<RealEnclosure> eps;
        try {
          eps = nearest_int_distance(mu_hat * e.q) - *e.m_gamma_dist;
        } catch (const Error& err) {
          if (err.kind() != ErrorKind::Ambiguity) throw;
        }
        if (eps && eps->is_positive()) return finish(e, *eps, A, B, retries);
      }
      ++retries;
    }
    throw Error(ErrorKind::EpsilonNonPositive,
                "eps not certified positive for " + std::to_string(entries_.size()) + " convergents starting at index " +
                    std::to_string(entries_.front().convergent.index));
  }

 private:
  struct Entry {
    Convergent convergent;
    RealEnclosure q;
    std::optional<RealEnclosure> m_gamma_dist;  // empty when ||gamma q|| is ambiguous
  };

  static std::vector<Convergent> irrational_convergents(const RealEnclosure& gamma_hat, const mpz_class& q_min) {
    if (collapsed_rational(gamma_hat)) {
      throw Error(ErrorKind::Certification, "gamma enclosure collapses to a rational of small height");
    }
    return continued_fraction_convergents(gamma_hat, q_min, kConvergentAttempts);
  }

  static ReductionOutcome finish(const Entry& e, const RealEnclosure& eps, const RealEnclosure& A,
                                 const RealEnclosure& B, unsigned retries) {
    // The threshold only needs a few digits: evaluate it at low precision on
    // rounded-outward inputs (smaller eps and log B, larger A and q), which can only raise it.
    const Precision low{kMinDigits};
    auto down = [&](const RealEnclosure& x) { return RealEnclosure::from_raw_bounds(x.lower_raw(), x.lower_raw(), low); };
    auto up = [&](const RealEnclosure& x) { return RealEnclosure::from_raw_bounds(x.upper_raw(), x.upper_raw(), low); };
    RealEnclosure w = log(up(A) * up(e.q) / down(eps)) / log(down(B));
    return {e.convergent, eps, w, w.ceil_upper().get_si(), retries};
  }

  mpz_class M_;
  std::vector<Entry> entries_;
};

inline void validate(const ReductionInstance& inst) {
  require(inst.A.is_positive(), "A must be positive");
  require(certainly_less(RealEnclosure(1L, inst.B.precision()), inst.B), "B must exceed 1");
  require(inst.M >= 1, "M must be a positive integer");
}

/// One application of the reduction lemma on an explicit convergent list of gamma.
inline ReductionOutcome dujella_petho(const ReductionInstance& inst, std::span<const Convergent> convergents) {
  validate(inst);
  return DujellaPetho(inst.gamma_hat, inst.M, {convergents.begin(), convergents.end()}).solve(inst.mu_hat, inst.A, inst.B);
}

inline ReductionOutcome dujella_petho(const ReductionInstance& inst) {
  validate(inst);
  return DujellaPetho(inst.gamma_hat, inst.M).solve(inst.mu_hat, inst.A, inst.B);
}

/// Bound on |z_1| when m = 0: 12 / alpha^n.
inline RealEnclosure z_bound_m0(long n, const AlgebraicConstants& k = constants()) {
  require(n >= kMinReducedN, "z bound for m = 0 needs n >= 7");
  return 12L / pow(k.alpha, n);
}

/// Bound on z_1 when m >= 1: 6 / alpha^(n-m).
inline RealEnclosure z_bound_general(long n, long m, const AlgebraicConstants& k = constants()) {
  require(m >= 1 && n >= m, "z bound needs 1 <= m <= n");
  return 6L / pow(k.alpha, n - m);
}

/// Exact counterparts of the rounded step constants: dividing the z bounds
/// by log alpha gives 12/log alpha and 6/log alpha (used as 32 and 16), and
/// 10/log alpha in step 2 (used as 27).
struct StepCoefficients {
  RealEnclosure single_term;
  RealEnclosure gap;
  RealEnclosure step2;
};

inline StepCoefficients step_coefficients(const AlgebraicConstants& k = constants()) {
  return {12L / k.log_alpha, 6L / k.log_alpha, 10L / k.log_alpha};
}

/// Sign of z_1 = l log b - (n+2) log alpha + log(a / ((b-1) C_alpha)) for an
/// actual solution, certified from the enclosures. Expected positive whenever m >= 1.
inline RealEnclosure z1_value(unsigned long n, unsigned long ell, unsigned long a, unsigned long b,
                              const AlgebraicConstants& k = constants()) {
  const Precision p = k.precision;
  return static_cast<long>(ell) * log_of(b, p) - static_cast<long>(n + 2) * k.log_alpha +
         log_of(a, p) - log_of(b - 1, p) - log(k.c_alpha);
}

/// gamma, mu and the convergents of gamma for one base at one precision.
class ReductionContext {
 public:
  ReductionContext(unsigned long b, const mpz_class& M, Precision p)
      : b_(b),
        k_(constants(p)),
        gamma_hat_(log_of(b, p) / k_.log_alpha),
        inv_log_alpha_(1L / k_.log_alpha),
        mu_offset_(-(log_of(b - 1, p) + log(k_.c_alpha))),
        solver_(gamma_hat_, M) {
    require(b >= 2, "base must be at least 2");
    log_a_.reserve(b);
    log_a_.push_back(RealEnclosure(p));
    for (unsigned long a = 1; a < b; ++a) log_a_.push_back(log_of(a, p));
  }

  unsigned long base() const { return b_; }
  Precision precision() const { return k_.precision; }
  const AlgebraicConstants& constants_used() const { return k_; }
  const RealEnclosure& gamma_hat() const { return gamma_hat_; }
  const DujellaPetho& solver() const { return solver_; }

  /// log(a / ((b-1) C_alpha)) / log alpha - 2
  RealEnclosure mu_step1(unsigned long a) const { return (log_a_.at(a) + mu_offset_) * inv_log_alpha_ - 2L; }

  /// log(a / ((b-1) C_alpha (1 + alpha^-gap))) / log alpha - 2
  RealEnclosure mu_step2(unsigned long a, long gap) const {
    return (log_a_.at(a) + mu_offset_ - log_one_plus(gap)) * inv_log_alpha_ - 2L;
  }

  ReductionInstance instance(const RealEnclosure& mu, long A) const {
    return {gamma_hat_, mu, RealEnclosure(A, k_.precision), k_.alpha, solver_.M()};
  }

  ReductionOutcome solve(const RealEnclosure& mu, long A) const {
    return solver_.solve(mu, RealEnclosure(A, k_.precision), k_.alpha);
  }

 private:
  const RealEnclosure& log_one_plus(long gap) const {
    require(gap >= 0, "gap must be non-negative");
    while (static_cast<long>(log_one_plus_.size()) <= gap) {
      const long d = static_cast<long>(log_one_plus_.size());
      log_one_plus_.push_back(log(1L + pow(k_.alpha, -d)));
    }
    return log_one_plus_[static_cast<std::size_t>(gap)];
  }

  unsigned long b_;
  const AlgebraicConstants& k_;
  RealEnclosure gamma_hat_;
  RealEnclosure inv_log_alpha_;
  RealEnclosure mu_offset_;
  DujellaPetho solver_;
  std::vector<RealEnclosure> log_a_;
  mutable std::vector<RealEnclosure> log_one_plus_;
};

// Campaign --------------------------------------------------------------------

enum class CaseKind { SingleTerm, Gap, Step2 };

inline const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::SingleTerm: return "m0";
    case CaseKind::Gap: return "gap";
    case CaseKind::Step2: return "step2";
  }
  return "?";
}

struct CaseRecord {
  CaseKind kind = CaseKind::SingleTerm;
  unsigned a = 0;
  int gap = -1;  // n - m for step-2 cases
  int precision_digits = 0;
  unsigned convergent_index = 0;
  unsigned retries = 0;
  double epsilon_lower = 0;  // rounded down
  long threshold = 0;
};

struct CaseFailure {
  unsigned long b = 0;
  CaseKind kind = CaseKind::SingleTerm;
  unsigned a = 0;
  int gap = -1;
  std::size_t convergent_index = 0;
  std::string reason;
};

struct Step1Bound {
  long single_term = 0;
  long gap = 0;
};

struct CampaignResult {
  unsigned long b = 0;
  mpz_class M;
  std::map<int, std::vector<Convergent>> convergents;  // keyed by precision digits
  std::map<unsigned, Step1Bound> per_a;
  long step1_m0_bound = 0;
  long gap_bound = 0;
  long step2_bound = 0;
  std::vector<CaseRecord> step1;  // SingleTerm and Gap records, ordered by a
  std::vector<CaseRecord> step2;  // ordered by a, then gap
  std::vector<CaseFailure> failures;

  bool ok() const { return failures.empty(); }

  /// Step-2 threshold for (a, n - m), if that case was reduced.
  std::optional<long> step2_threshold(unsigned a, long gap) const {
    if (a == 0 || a >= b || gap < 0 || gap > gap_bound) return std::nullopt;
    const std::size_t idx = (a - 1) * static_cast<std::size_t>(gap_bound + 1) + static_cast<std::size_t>(gap);
    if (idx >= step2.size() || step2[idx].a != a || step2[idx].gap != gap) return std::nullopt;
    return step2[idx].threshold;
  }

  const Convergent* convergent_of(const CaseRecord& r) const {
    auto it = convergents.find(r.precision_digits);
    if (it == convergents.end() || r.convergent_index >= it->second.size()) return nullptr;
    return &it->second[r.convergent_index];
  }
};

struct ReductionConfig {
  Precision precision{};
  unsigned jobs = 1;
};

/// Contexts for one base, one per precision level reached by escalation.
class BaseReducer {
 public:
  BaseReducer(unsigned long b, mpz_class M, Precision p) : b_(b), M_(std::move(M)), base_(p) {}

  const ReductionContext& context(int escalation) {
    Precision p = base_;
    for (int i = 0; i < escalation; ++i) p = p.scaled(kEscalationFactor);
    auto it = contexts_.find(p.digits);
    if (it == contexts_.end()) it = contexts_.emplace(p.digits, std::make_unique<ReductionContext>(b_, M_, p)).first;
    return *it->second;
  }

  /// Solves a case, escalating precision by 50% (at most three times) when no
  /// convergent yields a certified positive eps.
  std::optional<CaseRecord> solve(CaseKind kind, unsigned a, long gap, CaseFailure& failure) {
    std::string last;
    std::size_t last_index = 0;
    for (int esc = 0; esc <= kMaxEscalations; ++esc) {
      try {
        const ReductionContext& ctx = context(esc);
        last_index = ctx.solver().first_index();
        RealEnclosure mu = kind == CaseKind::Step2 ? ctx.mu_step2(a, gap) : ctx.mu_step1(a);
        const long A = kind == CaseKind::SingleTerm ? kStep1SingleA : kind == CaseKind::Gap ? kStep1GapA : kStep2A;
        ReductionOutcome out = ctx.solve(mu, A);
        return CaseRecord{kind,
                          a,
                          static_cast<int>(gap),
                          ctx.precision().digits,
                          static_cast<unsigned>(out.convergent.index),
                          out.retries,
                          out.epsilon.lower_double(),
                          out.threshold};
      } catch (const Error& err) {
        if (err.kind() != ErrorKind::EpsilonNonPositive && err.kind() != ErrorKind::PrecisionExhausted) throw;
        last = err.what();
      }
    }
    failure = {b_, kind, a, static_cast<int>(gap), last_index, last};
    return std::nullopt;
  }

  std::map<int, std::vector<Convergent>> convergents() const {
    std::map<int, std::vector<Convergent>> out;
    for (const auto& [digits, ctx] : contexts_) {
      // Index lookup needs the full prefix, so recompute from the enclosure.
      out[digits] = continued_fraction_convergents(ctx->gamma_hat(), 6 * M_, kConvergentAttempts);
    }
    return out;
  }

 private:
  unsigned long b_;
  mpz_class M_;
  Precision base_;
  std::map<int, std::unique_ptr<ReductionContext>> contexts_;
};

/// Step 1 for one base: bounds on n when m = 0 and on n - m when m >= 1.
inline void reduce_step1(BaseReducer& reducer, CampaignResult& out) {
  out.step1_m0_bound = kMinReducedN - 1;
  out.gap_bound = 0;
  for (unsigned a = 1; a < out.b; ++a) {
    Step1Bound bound;
    for (CaseKind kind : {CaseKind::SingleTerm, CaseKind::Gap}) {
      CaseFailure failure;
      if (auto rec = reducer.solve(kind, a, -1, failure)) {
        (kind == CaseKind::SingleTerm ? bound.single_term : bound.gap) = rec->threshold;
        out.step1.push_back(*rec);
      } else {
        out.failures.push_back(failure);
      }
    }
    out.per_a[a] = bound;
    out.step1_m0_bound = std::max(out.step1_m0_bound, bound.single_term);
    out.gap_bound = std::max(out.gap_bound, bound.gap);
  }
}

/// Step 2 for one base: bound on n for every a and every n - m in [0, gap_max].
inline void reduce_step2(BaseReducer& reducer, long gap_max, CampaignResult& out) {
  out.step2_bound = kMinReducedN - 1;
  out.step2.reserve((out.b - 1) * static_cast<std::size_t>(gap_max + 1));
  for (unsigned a = 1; a < out.b; ++a) {
    for (long gap = 0; gap <= gap_max; ++gap) {
      CaseFailure failure;
      if (auto rec = reducer.solve(CaseKind::Step2, a, gap, failure)) {
        out.step2_bound = std::max(out.step2_bound, rec->threshold);
        out.step2.push_back(*rec);
      } else {
        out.failures.push_back(failure);
        // Placeholder keeps the (a, gap) indexing dense; an unreduced case has no bound.
        out.step2.push_back(CaseRecord{CaseKind::Step2, a, static_cast<int>(gap), 0, 0, 0, 0.0, -1});
      }
    }
  }
}

/// Full two-step reduction for one base with M = ceil(6.5e31 log^5 b).
inline CampaignResult reduce_base(unsigned long b, Precision p) {
  CampaignResult out;
  out.b = b;
  out.M = search_bound(b, constants(p)).M;
  BaseReducer reducer(b, out.M, p);
  try {
    reduce_step1(reducer, out);
    if (out.failures.empty()) reduce_step2(reducer, out.gap_bound, out);
  } catch (const Error& err) {
    out.failures.push_back({b, CaseKind::SingleTerm, 0, -1, 0, err.what()});
  }
  out.convergents = reducer.convergents();
  return out;
}

/// Runs the reduction for every base in [b_lo, b_hi]; results are ordered by base
/// and do not depend on `jobs`.
inline std::vector<CampaignResult> run_campaign(unsigned long b_lo, unsigned long b_hi, const ReductionConfig& cfg = {}) {
  std::vector<CampaignResult> results;
  if (b_lo > b_hi) return results;
  require(b_lo >= 2, "bases start at 2");
  const std::size_t count = b_hi - b_lo + 1;
  results.resize(count);
  constants(cfg.precision);  // warm the shared cache before fanning out

  // Largest bases carry the most cases, so hand them out first.
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const std::size_t slot = count - 1 - i;
      results[slot] = reduce_base(b_lo + slot, cfg.precision);
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

struct CampaignSummary {
  long step1_m0_bound = 0;
  long gap_bound = 0;
  long step2_bound = 0;
  std::size_t cases = 0;
  std::size_t retried_cases = 0;
  std::size_t escalated_cases = 0;
  std::size_t failures = 0;
};

inline CampaignSummary summarize(const std::vector<CampaignResult>& results, Precision base) {
  CampaignSummary s;
  for (const auto& r : results) {
    s.step1_m0_bound = std::max(s.step1_m0_bound, r.step1_m0_bound);
    s.gap_bound = std::max(s.gap_bound, r.gap_bound);
    s.step2_bound = std::max(s.step2_bound, r.step2_bound);
    s.failures += r.failures.size();
    for (const auto* list : {&r.step1, &r.step2}) {
      for (const auto& c : *list) {
        ++s.cases;
        if (c.retries > 0) ++s.retried_cases;
        if (c.precision_digits > base.digits) ++s.escalated_cases;
      }
    }
  }
  return s;
}

}  // namespace narayana
