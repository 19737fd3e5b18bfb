#include "towerlab/certify.hpp"

#include <algorithm>

#include "towerlab/errors.hpp"

namespace towerlab {

namespace {

Interval pair_F(const BaseSequence& seq, long offset, long n, const Interval& x, long prec) {
  Interval inner = pow_unit_interval(seq.base_interval(offset + 2 * n, prec), x);
  return pow_unit_interval(seq.base_interval(offset + 2 * n - 1, prec), inner);
}

// G with the pair (u_{offset+2n-1}, u_{offset+2n}).
Interval pair_G(const BaseSequence& seq, long offset, long n, const Interval& x, long prec) {
  if (x.lo().sgn() <= 0 || x.hi() >= 1L) {
    throw DomainError("dolan_G: argument must lie strictly inside (0,1)");
  }
  Interval lx = log(x);                                       // negative
  Interval lu1 = seq.log_base(offset + 2 * n - 1, prec);      // negative
  Interval ratio = div(lx, lu1);                              // positive
  Interval lr = log(ratio);
  Interval lu2 = seq.log_base(offset + 2 * n, prec);          // negative
  return div(lr, lu2);
}

std::string ev(const Interval& x) { return x.to_string(17); }

}  // namespace

Interval cipra_bounds(const BaseSequence& seq, long k, long prec) {
  if (k < 1) throw DomainError("cipra_bounds: k must be >= 1");
  Interval even = eval_tower_i(seq, 2 * k, prec);
  Interval odd = eval_tower_i(seq, 2 * k + 1, prec);
  return hull(odd, even);
}

Interval dolan_F(const BaseSequence& seq, long n, const Interval& x, long prec) {
  if (x.lo().sgn() < 0 || x.hi() > 1L) {
    throw DomainError("dolan_F: argument must lie in [0,1]");
  }
  return pair_F(seq, 0, n, x, prec);
}

Interval dolan_G(const BaseSequence& seq, long n, const Interval& x, long prec) {
  return pair_G(seq, 0, n, x, prec);
}

Lemma3Result lemma3_check(const BigReal& theta, const BigReal& t_max, long prec) {
  if (theta.sgn() <= 0 || theta >= 1L || t_max.sgn() <= 0 || t_max >= 1L) {
    throw DomainError("lemma3_check: theta and t_max must lie in (0,1)");
  }
  Lemma3Result res;
  Interval th = Interval::point(theta);
  Interval tm = Interval::point(t_max);

  // (i) t_max < e^(-1/theta): t -> t^theta * ln t decreasing up to there.
  Interval cutoff = exp(neg(div(Interval::point(BigReal::of(1L, prec)), th)));
  bool mono_pass = t_max < cutoff.lo();
  bool mono_fail = t_max >= cutoff.hi();
  res.value = pow_unit_interval(tm, pow_unit_interval(tm, th));

  // (ii) min over (0, t_max] is at t_max; require t_max^(t_max^theta) >= theta.
  bool val_pass = res.value.lo() >= theta;
  bool val_fail = res.value.hi() < theta;

  if (mono_pass && val_pass) {
    res.ok = true;
    res.detail = "t_max < e^(-1/theta) " + cutoff.to_string(12) +
                 " and t_max^(t_max^theta) = " + res.value.to_string(12) + " >= theta";
  } else if (!mono_pass && !mono_fail) {
    res.indeterminate = true;
    res.detail = "monotonicity cutoff comparison indeterminate at this precision";
  } else if (!val_pass && !val_fail) {
    res.indeterminate = true;
    res.detail = "threshold comparison indeterminate: t_max^(t_max^theta) = " +
                 res.value.to_string(12);
  } else if (!mono_pass) {
    res.detail = "t_max >= e^(-1/theta) " + cutoff.to_string(12) +
                 ": t -> t^(t^theta) not certified decreasing on (0, t_max]";
  } else {
    res.detail = "t_max^(t_max^theta) = " + res.value.to_string(12) + " < theta";
  }
  return res;
}

std::string cert_kind_name(CertKind k) {
  switch (k) {
    case CertKind::Cipra: return "cipra";
    case CertKind::DolanLower: return "dolan_lower";
    case CertKind::DolanUpper: return "dolan_upper";
    case CertKind::Shooting: return "shooting";
  }
  return "?";
}

CertKind cert_kind_from_name(const std::string& s) {
  if (s == "cipra") return CertKind::Cipra;
  if (s == "dolan_lower") return CertKind::DolanLower;
  if (s == "dolan_upper") return CertKind::DolanUpper;
  if (s == "shooting") return CertKind::Shooting;
  throw UsageError("unknown certificate kind '" + s + "'");
}

bool Certificate::valid() const {
  if (checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckRecord& c) { return c.pass; });
}

nlohmann::json Certificate::to_json() const {
  nlohmann::json j;
  j["kind"] = cert_kind_name(kind);
  j["seq"] = seq_name(seq);
  j["parity"] = parity_name(parity);
  j["bound"] = bound.serialize();
  j["depth"] = depth;
  j["theta"] = theta.serialize();
  j["t_max"] = t_max.serialize();
  nlohmann::json orb = nlohmann::json::array();
  for (const auto& iv : orbit) {
    orb.push_back({iv.lo().serialize(), iv.hi().serialize()});
  }
  j["orbit"] = orb;
  nlohmann::json chk = nlohmann::json::array();
  for (const auto& c : checks) {
    chk.push_back({{"name", c.name}, {"pass", c.pass}, {"evidence", c.evidence}});
  }
  j["checks"] = chk;
  return j;
}

Certificate parse_certificate(const nlohmann::json& j, long prec) {
  Certificate c;
  c.kind = cert_kind_from_name(j.at("kind").get<std::string>());
  std::string seq = j.at("seq").get<std::string>();
  if (seq == "zi") c.seq = SeqKind::ZeraouliaI;
  else if (seq == "zii") c.seq = SeqKind::ZeraouliaII;
  else if (seq == "custom") c.seq = SeqKind::Custom;
  else throw UsageError("unknown seq '" + seq + "'");
  c.parity = j.at("parity").get<std::string>() == "even" ? Parity::Even : Parity::Odd;
  c.bound = BigReal::parse(j.at("bound").get<std::string>(), prec);
  c.depth = j.at("depth").get<long>();
  c.theta = BigReal::parse(j.at("theta").get<std::string>(), prec);
  c.t_max = BigReal::parse(j.at("t_max").get<std::string>(), prec);
  for (const auto& pair : j.at("orbit")) {
    c.orbit.emplace_back(BigReal::parse(pair.at(0).get<std::string>(), prec),
                         BigReal::parse(pair.at(1).get<std::string>(), prec));
  }
  for (const auto& ck : j.at("checks")) {
    c.checks.push_back({ck.at("name").get<std::string>(), ck.at("pass").get<bool>(),
                        ck.at("evidence").get<std::string>()});
  }
  return c;
}

Certificate dolan_certify(const BaseSequence& seq, Parity parity,
                          const BigReal& candidate, long depth_m,
                          const BigReal& theta, const BigReal& t_max, long prec,
                          bool custom_tail_monotone) {
  if (candidate.sgn() <= 0 || candidate >= 1L) {
    throw DomainError("dolan_certify: candidate must lie in (0,1)");
  }
  if (depth_m < 1) throw DomainError("dolan_certify: depth must be >= 1");

  Certificate cert;
  cert.kind = parity == Parity::Even ? CertKind::DolanLower : CertKind::DolanUpper;
  cert.seq = seq.kind();
  cert.parity = parity;
  cert.bound = candidate;
  cert.depth = depth_m;
  cert.theta = theta;
  cert.t_max = t_max;

  const long offset = parity == Parity::Even ? 0 : 1;

  // Orbit start. Odd parity works on the shifted pair system: the claim
  // l < c converts to (shifted even-limit) > c_bar with
  // c_bar >= ln c / ln u_1, taken as the upper end of the enclosure.
  Interval y = Interval::point(candidate);
  if (parity == Parity::Odd) {
    Interval cbar = div(log(Interval::point(candidate)), seq.log_base(1, prec));
    if (cbar.hi() >= 1L || cbar.lo().sgn() <= 0) {
      cert.checks.push_back({"candidate_convertible", false,
                             "ln c / ln u_1 = " + ev(cbar) + " leaves (0,1)"});
      return cert;
    }
    y = Interval::point(cbar.hi());
    cert.checks.push_back({"candidate_convertible", true,
                           "c_bar = " + y.lo().decimal(20) + " >= ln c / ln u_1 " + ev(cbar)});
  }

  cert.orbit.push_back(y);
  bool domain_ok = true;
  for (long k = 1; k <= depth_m && domain_ok; ++k) {
    try {
      y = pair_G(seq, offset, k, y, prec);
      cert.orbit.push_back(y);
      if (y.lo().sgn() <= 0 || y.hi() >= 1L) domain_ok = false;
    } catch (const DomainError&) {
      domain_ok = false;
    }
  }
  if (!domain_ok) {
    cert.checks.push_back(
        {"orbit_in_domain", false,
         "G-orbit left (0,1) at step " + std::to_string(cert.orbit.size() - 1) +
             " (last enclosure " + ev(cert.orbit.back()) + ")"});
    return cert;
  }
  cert.checks.push_back({"orbit_in_domain", true,
                         "all " + std::to_string(depth_m) + " G-orbit enclosures inside (0,1)"});

  const Interval& ym = cert.orbit.back();
  bool below = ym.hi() < theta;
  cert.checks.push_back({"orbit_below_theta", below,
                         "y_" + std::to_string(depth_m) + " = " + ev(ym) +
                             (below ? " < theta = " : " not certified below theta = ") +
                             theta.decimal(8)});

  Lemma3Result l3 = lemma3_check(theta, t_max, prec);
  cert.checks.push_back({"lemma3", l3.ok, l3.detail});

  // Tail hypothesis: every pair beyond depth_m has both bases <= t_max
  // (and ordered, which strict decrease gives).
  long j0 = offset + 2 * depth_m + 1;
  if (seq.kind() == SeqKind::Custom) {
    bool all_below = true;
    long len = *seq.max_index();
    for (long j = j0; j <= len && all_below; ++j) {
      if (!(seq.base_interval(j, prec).hi() <= t_max)) all_below = false;
    }
    bool pass = all_below && custom_tail_monotone;
    cert.checks.push_back(
        {"tail_bases_below_tmax", pass,
         all_below
             ? (custom_tail_monotone
                    ? "listed bases beyond index " + std::to_string(j0) +
                          " are <= t_max; caller asserts monotone decrease beyond the list"
                    : "finite base list cannot certify the infinite tail without the "
                      "monotone flag")
             : "a listed base beyond index " + std::to_string(j0) + " exceeds t_max"});
  } else {
    bool below_tmax = seq.base_interval(j0, prec).hi() <= t_max;
    cert.checks.push_back({"tail_bases_below_tmax", below_tmax,
                           "u_" + std::to_string(j0) + " = " + seq.base(j0).get_str() +
                               (below_tmax ? " <= t_max and the bases decrease strictly"
                                           : " > t_max")});
  }
  return cert;
}

Certificate dolan_term_certificate(const BaseSequence& seq, Parity parity,
                                   const BigReal& candidate, long prec,
                                   long max_scan_depth) {
  if (candidate.sgn() <= 0 || candidate >= 1L) {
    throw DomainError("dolan_term_certificate: candidate must lie in (0,1)");
  }
  Certificate cert;
  cert.kind = parity == Parity::Even ? CertKind::DolanUpper : CertKind::DolanLower;
  cert.seq = seq.kind();
  cert.parity = parity;
  cert.bound = candidate;
  cert.theta = BigReal::of(0L, prec);
  cert.t_max = BigReal::of(0L, prec);

  long start = parity == Parity::Even ? 2 : 1;
  long limit = max_scan_depth;
  if (auto mi = seq.max_index()) limit = std::min(limit, *mi);
  for (long n = start; n <= limit; n += 2) {
    Interval iv = eval_tower_i(seq, n, prec);
    bool found = parity == Parity::Even ? iv.hi() < candidate : iv.lo() > candidate;
    if (found) {
      cert.depth = n;
      cert.orbit.push_back(iv);
      cert.checks.push_back(
          {parity == Parity::Even ? "term_below_candidate" : "term_above_candidate", true,
           "a_" + std::to_string(n) + " = " + ev(iv) +
               (parity == Parity::Even ? " < " : " > ") + candidate.decimal(20)});
      cert.checks.push_back({"bases_in_unit_interval", true,
                             "exact rationals in (0,1) by construction"});
      return cert;
    }
  }
  cert.checks.push_back({parity == Parity::Even ? "term_below_candidate" : "term_above_candidate",
                         false,
                         "no term of the monotone subsequence crossed the candidate within depth " +
                             std::to_string(limit)});
  return cert;
}

Certificate cipra_certificate(const BaseSequence& seq, long k, long prec) {
  Certificate cert;
  cert.kind = CertKind::Cipra;
  cert.seq = seq.kind();
  cert.parity = Parity::Even;
  cert.depth = k;
  cert.theta = BigReal::of(0L, prec);
  cert.t_max = BigReal::of(0L, prec);
  Interval even = eval_tower_i(seq, 2 * k, prec);
  Interval odd = eval_tower_i(seq, 2 * k + 1, prec);
  Interval hullv = hull(odd, even);
  cert.bound = hullv.hi();
  cert.orbit = {odd, even, hullv};
  bool ordered = odd.strictly_below(even);
  cert.checks.push_back({"truncations_ordered", ordered,
                         "a_" + std::to_string(2 * k + 1) + " = " + ev(odd) +
                             (ordered ? " < " : " not certified below ") + "a_" +
                             std::to_string(2 * k) + " = " + ev(even)});
  return cert;
}

Certificate replay_certificate(const Certificate& cert, long prec,
                               bool custom_tail_monotone, const BaseSequence* custom_seq) {
  BaseSequence seq = BaseSequence::zeraoulia_i();
  if (cert.seq == SeqKind::ZeraouliaII) seq = BaseSequence::zeraoulia_ii();
  if (cert.seq == SeqKind::Custom) {
    if (custom_seq == nullptr || custom_seq->kind() != SeqKind::Custom) {
      throw UsageError("replay of a custom-sequence certificate needs the base list");
    }
    seq = *custom_seq;
  }
  switch (cert.kind) {
    case CertKind::Cipra:
      return cipra_certificate(seq, cert.depth, prec);
    case CertKind::DolanLower:
    case CertKind::DolanUpper: {
      bool is_orbit = (cert.parity == Parity::Even) == (cert.kind == CertKind::DolanLower);
      if (is_orbit) {
        return dolan_certify(seq, cert.parity, cert.bound, cert.depth, cert.theta,
                             cert.t_max, prec, custom_tail_monotone);
      }
      return dolan_term_certificate(seq, cert.parity, cert.bound, prec,
                                    std::max(cert.depth, 400L));
    }
    case CertKind::Shooting:
      return shooting_certificate(shooting_sequence(cert.bound, cert.depth, prec));
  }
  throw Error("unreachable");
}

ShootingReport shooting_sequence(const BigReal& t1, long horizon, long prec) {
  if (t1.sgn() <= 0 || t1 >= 1L) throw DomainError("shooting: t1 must lie in (0,1)");
  if (horizon < 2) throw DomainError("shooting: horizon must be >= 2");

  ShootingReport rep;
  rep.t1 = t1;
  rep.horizon = horizon;
  rep.orbit.push_back(add(t1, BigReal(prec), MPFR_RNDN, prec));
  while (static_cast<long>(rep.orbit.size()) < horizon) {
    const BigReal& t = rep.orbit.back();
    if (t.sgn() <= 0 || t >= 1L) {
      rep.domain_exit = static_cast<long>(rep.orbit.size());
      break;
    }
    long k = static_cast<long>(rep.orbit.size());
    mpz_class kk(k);
    BigReal denom = log(BigReal::of_integer(kk * (kk + 1), prec), MPFR_RNDN);
    rep.orbit.push_back(div(neg(log(t, MPFR_RNDN, prec)), denom, MPFR_RNDN, prec));
  }

  long p = 1;
  while (p < static_cast<long>(rep.orbit.size()) && rep.orbit[p] < rep.orbit[p - 1]) ++p;
  rep.monotone_prefix = p;
  if (p < static_cast<long>(rep.orbit.size())) {
    ShootingViolation v;
    v.index = p + 1;  // 1-based position of the value that failed to decrease
    v.direction = rep.orbit[p] > rep.orbit[p - 1] ? "increase" : "flat";
    rep.first_violation = v;
  }
  return rep;
}

nlohmann::json ShootingReport::to_json() const {
  nlohmann::json j;
  j["t1"] = t1.serialize();
  j["horizon"] = horizon;
  nlohmann::json orb = nlohmann::json::array();
  for (const auto& t : orbit) orb.push_back(t.serialize());
  j["orbit"] = orb;
  j["monotone_prefix"] = monotone_prefix;
  if (first_violation) {
    j["first_violation"] = {{"index", first_violation->index},
                            {"direction", first_violation->direction}};
  } else {
    j["first_violation"] = nullptr;
  }
  if (domain_exit) j["domain_exit"] = *domain_exit;
  else j["domain_exit"] = nullptr;
  return j;
}

Certificate shooting_certificate(const ShootingReport& report) {
  Certificate cert;
  cert.kind = CertKind::Shooting;
  cert.seq = SeqKind::ZeraouliaI;
  cert.parity = Parity::Even;
  cert.bound = report.t1;
  cert.depth = report.horizon;
  cert.theta = BigReal::of(0L, report.t1.precision());
  cert.t_max = BigReal::of(0L, report.t1.precision());
  for (const auto& t : report.orbit) cert.orbit.push_back(Interval::point(t));
  bool in_domain = !report.domain_exit.has_value();
  cert.checks.push_back({"orbit_in_domain", in_domain,
                         in_domain ? "all values inside (0,1)"
                                   : "left (0,1) at index " +
                                         std::to_string(*report.domain_exit)});
  bool monotone = report.monotone_prefix == static_cast<long>(report.orbit.size());
  cert.checks.push_back(
      {"orbit_monotone", monotone,
       monotone ? "strictly decreasing through the horizon (heuristic evidence only)"
                : "first violation at index " +
                      std::to_string(report.first_violation ? report.first_violation->index
                                                            : -1)});
  return cert;
}

nlohmann::json ShootingBisectResult::to_json() const {
  nlohmann::json j;
  j["t1_star"] = t1_star.serialize();
  j["bracket"] = {bracket.lo().serialize(), bracket.hi().serialize()};
  j["best_prefix"] = best_prefix;
  j["unimodal"] = unimodal;
  return j;
}

ShootingBisectResult shooting_bisect(const BigReal& lo, const BigReal& hi,
                                     long horizon, long prec) {
  if (lo.sgn() <= 0 || hi >= 1L || lo > hi) {
    throw DomainError("shooting_bisect: need 0 < lo <= hi < 1");
  }
  auto prefix_of = [&](const BigReal& c) {
    return shooting_sequence(c, horizon, prec).monotone_prefix;
  };

  if (lo == hi) {
    ShootingBisectResult r{lo, Interval::point(lo), prefix_of(lo), true};
    return r;
  }

  const int kGrid = 33;
  const BigReal two = BigReal::of(2L, prec);
  std::vector<BigReal> cand;
  std::vector<long> pref;
  BigReal span = hi - lo;
  for (int i = 0; i < kGrid; ++i) {
    BigReal c = lo + span * BigReal::of(static_cast<long>(i), prec) /
                         BigReal::of(static_cast<long>(kGrid - 1), prec);
    cand.push_back(c);
    pref.push_back(prefix_of(c));
  }
  long best = *std::max_element(pref.begin(), pref.end());

  // argmax plateau; non-contiguity means a non-unimodal prefix profile
  bool unimodal = true;
  int i0 = -1, i1 = -1;
  for (int i = 0; i < kGrid; ++i) {
    if (pref[i] == best) {
      if (i0 < 0) i0 = i;
      else if (i != i1 + 1) unimodal = false;
      i1 = i;
    }
  }

  // refine the two plateau edges by bisection on the prefix == best predicate
  BigReal good_left = cand[i0];
  if (i0 > 0) {
    BigReal bad = cand[i0 - 1];
    for (int it = 0; it < 60; ++it) {
      BigReal mid = (bad + good_left) / two;
      if (prefix_of(mid) == best) good_left = mid;
      else bad = mid;
    }
  }
  BigReal good_right = cand[i1];
  if (i1 + 1 < kGrid) {
    BigReal bad = cand[i1 + 1];
    for (int it = 0; it < 60; ++it) {
      BigReal mid = (bad + good_right) / two;
      if (prefix_of(mid) == best) good_right = mid;
      else bad = mid;
    }
  }

  // interior spot check of the plateau
  for (int i = 1; i <= 15 && unimodal; ++i) {
    BigReal c = good_left + (good_right - good_left) *
                                BigReal::of(static_cast<long>(i), prec) /
                                BigReal::of(16L, prec);
    if (prefix_of(c) != best) unimodal = false;
  }

  ShootingBisectResult r{(good_left + good_right) / two,
                         Interval(good_left, good_right), best, unimodal};
  if (prefix_of(r.t1_star) != best) {
    r.unimodal = false;
    r.t1_star = cand[i0 + (i1 - i0) / 2];
  }
  return r;
}

}  // namespace towerlab
