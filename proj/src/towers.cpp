#include "towerlab/towers.hpp"

#include <sstream>

#include "towerlab/errors.hpp"
#include "towerlab/lambertw.hpp"

namespace towerlab {

std::string seq_name(SeqKind k) {
  switch (k) {
    case SeqKind::ZeraouliaI: return "zi";
    case SeqKind::ZeraouliaII: return "zii";
    case SeqKind::Custom: return "custom";
  }
  return "?";
}

std::string parity_name(Parity p) { return p == Parity::Even ? "even" : "odd"; }

BaseSequence BaseSequence::custom(std::vector<mpq_class> bases) {
  if (bases.empty()) throw DomainError("custom sequence: empty base list");
  for (auto& q : bases) {
    q.canonicalize();
    if (sgn(q) <= 0 || q >= 1) {
      throw DomainError("custom sequence: base " + q.get_str() + " not in (0,1)");
    }
  }
  BaseSequence s(SeqKind::Custom);
  s.custom_ = std::move(bases);
  return s;
}

BaseSequence BaseSequence::custom_from_text(const std::string& text) {
  std::vector<mpq_class> bases;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    size_t e = line.find_last_not_of(" \t\r");
    std::string tok = line.substr(b, e - b + 1);
    mpq_class q;
    if (q.set_str(tok, 10) != 0 || tok.find('/') == std::string::npos) {
      throw DomainError("custom sequence line " + std::to_string(lineno) +
                        ": expected p/q, got '" + tok + "'");
    }
    q.canonicalize();
    if (sgn(q) <= 0 || q >= 1) {
      throw DomainError("custom sequence line " + std::to_string(lineno) +
                        ": " + tok + " not in (0,1)");
    }
    bases.push_back(q);
  }
  return custom(std::move(bases));
}

std::optional<long> BaseSequence::max_index() const {
  if (kind_ == SeqKind::Custom) return static_cast<long>(custom_.size());
  return std::nullopt;
}

mpq_class BaseSequence::base(long k) const {
  if (k < 1) throw DomainError("base index must be >= 1");
  switch (kind_) {
    case SeqKind::ZeraouliaI: {
      mpz_class kk(k);
      return mpq_class(1, kk * (kk + 1));
    }
    case SeqKind::ZeraouliaII: {
      mpz_class fact;
      mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k + 1));
      mpq_class q(mpz_class(k), fact);
      q.canonicalize();
      return q;
    }
    case SeqKind::Custom:
      if (static_cast<size_t>(k) > custom_.size()) {
        throw DomainError("custom sequence index " + std::to_string(k) +
                          " out of range (length " + std::to_string(custom_.size()) + ")");
      }
      return custom_[static_cast<size_t>(k - 1)];
  }
  throw Error("unreachable");
}

BigReal BaseSequence::base_real(long k, long prec, mpfr_rnd_t rnd) const {
  return BigReal::of_rational(base(k), prec, rnd);
}

Interval BaseSequence::base_interval(long k, long prec) const {
  return Interval::of_rational(base(k), prec);
}

Interval BaseSequence::log_base(long k, long prec) const {
  return Interval::log_rational(base(k), prec);
}

BigReal BaseSequence::log_base_point(long k, long prec) const {
  const mpq_class q = base(k);
  BigReal ln_num = log(BigReal::of_integer(q.get_num(), prec), MPFR_RNDN, prec);
  BigReal ln_den = log(BigReal::of_integer(q.get_den(), prec), MPFR_RNDN, prec);
  return ln_num - ln_den;
}

namespace {

void check_depth(long m, long n) {
  if (m < 1 || n < m) throw DomainError("tower depth range invalid");
  if (n - m + 1 > kDefaultDepthCap) {
    throw DomainError("tower depth exceeds cap of " + std::to_string(kDefaultDepthCap));
  }
}

}  // namespace

BigReal eval_tail(const BaseSequence& seq, long m, long n, long prec) {
  check_depth(m, n);
  // Top level is the exact base; below it e <- u_k^e = exp(e ln u_k).
  BigReal e = seq.base_real(n, prec);
  for (long k = n - 1; k >= m; --k) {
    e = exp(e * seq.log_base_point(k, prec), MPFR_RNDN, prec);
  }
  return e;
}

BigReal eval_tower(const BaseSequence& seq, long n, long prec) {
  return eval_tail(seq, 1, n, prec);
}

BigReal eval_with_seed(const BaseSequence& seq, long n, const BigReal& seed, long prec) {
  check_depth(1, n);
  if (seed.sgn() <= 0 || seed > 1L) throw DomainError("seed must lie in (0,1]");
  BigReal e = exp(seed * seq.log_base_point(n, prec), MPFR_RNDN, prec);
  for (long k = n - 1; k >= 1; --k) {
    e = exp(e * seq.log_base_point(k, prec), MPFR_RNDN, prec);
  }
  return e;
}

Interval eval_tail_i(const BaseSequence& seq, long m, long n, long prec) {
  check_depth(m, n);
  Interval e = seq.base_interval(n, prec);
  for (long k = n - 1; k >= m; --k) {
    e = pow_unit_interval(seq.base_interval(k, prec), e);
  }
  return e;
}

Interval eval_tower_i(const BaseSequence& seq, long n, long prec) {
  return eval_tail_i(seq, 1, n, prec);
}

Interval eval_with_seed_i(const BaseSequence& seq, long n, const Interval& seed, long prec) {
  check_depth(1, n);
  if (seed.lo().sgn() <= 0 || seed.hi() > 1L) throw DomainError("seed interval must lie in (0,1]");
  Interval e = pow_unit_interval(seq.base_interval(n, prec), seed);
  for (long k = n - 1; k >= 1; --k) {
    e = pow_unit_interval(seq.base_interval(k, prec), e);
  }
  return e;
}

BigReal lambert_tail_seed(const BaseSequence& seq, long n, long prec) {
  if (seq.kind() != SeqKind::ZeraouliaI) {
    throw DomainError("lambert_tail_seed is defined for the ZeraouliaI bases");
  }
  if (n < 1) throw DomainError("lambert_tail_seed: n must be >= 1");
  mpz_class kk(n);
  BigReal arg = log(BigReal::of_integer(kk * (kk + 1), prec + 32), MPFR_RNDN);
  BigReal w = lambert_w0(arg);
  return exp(neg(w), MPFR_RNDN, prec);
}

Interval lambert_tail_seed_i(long n, long prec) {
  if (n < 1) throw DomainError("lambert_tail_seed_i: n must be >= 1");
  // T_n is the unique root in (0,1) of h(t) = ln t + t ln(n(n+1)),
  // which is strictly increasing; bisect with interval sign evaluation.
  mpz_class kk(n);
  mpq_class nn(kk * (kk + 1));
  Interval ln_nn = Interval::log_rational(nn, prec);
  BigReal lo = BigReal::parse("0.01", prec);
  BigReal hi = BigReal::of(1L, prec);
  auto h_sign = [&](const BigReal& t) -> int {
    Interval ht = add(log(Interval::point(t)), mul(Interval::point(t), ln_nn));
    if (ht.hi().sgn() < 0) return -1;
    if (ht.lo().sgn() > 0) return 1;
    return 0;
  };
  while (h_sign(lo) >= 0) lo = div(lo, BigReal::of(2L, prec), MPFR_RNDD);
  long iters = prec + 8;
  for (long i = 0; i < iters; ++i) {
    BigReal mid = div(add(lo, hi, MPFR_RNDN), BigReal::of(2L, prec), MPFR_RNDN);
    int s = h_sign(mid);
    if (s < 0) lo = mid;
    else if (s > 0) hi = mid;
    else break;  // indeterminate at this precision: current bracket is the enclosure
  }
  return Interval(lo, hi);
}

BigReal eval_stabilized(const BaseSequence& seq, long n, long prec) {
  if (seq.kind() != SeqKind::ZeraouliaI) {
    throw DomainError("eval_stabilized is defined for the ZeraouliaI bases");
  }
  return eval_with_seed(seq, n, lambert_tail_seed(seq, n + 1, prec), prec);
}

Interval eval_stabilized_i(const BaseSequence& seq, long n, long prec) {
  if (seq.kind() != SeqKind::ZeraouliaI) {
    throw DomainError("eval_stabilized_i is defined for the ZeraouliaI bases");
  }
  return eval_with_seed_i(seq, n, lambert_tail_seed_i(n + 1, prec), prec);
}

TowerValue make_tower_value(const BaseSequence& seq, long n, long prec,
                            bool interval_mode, std::optional<std::string> seed_desc) {
  TowerValue tv;
  tv.depth = n;
  tv.kind = seq.kind();
  tv.seed_desc = std::move(seed_desc);
  if (interval_mode) {
    Interval iv = eval_tower_i(seq, n, prec);
    if (iv.lo().sgn() <= 0 || iv.hi() > 1L) throw DomainError("tower value left (0,1]");
    tv.value = std::move(iv);
  } else {
    BigReal v = eval_tower(seq, n, prec);
    if (v.sgn() <= 0 || v > 1L) throw DomainError("tower value left (0,1]");
    tv.value = std::move(v);
  }
  return tv;
}

Interval enclose_tail_limits(const BaseSequence& seq, long m, long d, long prec) {
  if (d < 2) throw DomainError("enclose_tail_limits: depth must be >= 2");
  Interval a = eval_tail_i(seq, m, m + d - 2, prec);  // relative depth d-1
  Interval b = eval_tail_i(seq, m, m + d - 1, prec);  // relative depth d
  return hull(a, b);
}

}  // namespace towerlab
