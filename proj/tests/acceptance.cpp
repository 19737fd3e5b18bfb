// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code = number of failures.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <vector>

#include "towerlab/analysis.hpp"
#include "towerlab/certify.hpp"
#include "towerlab/interpolation.hpp"
#include "towerlab/oeis.hpp"

using namespace towerlab;

namespace {

int g_failures = 0;

void report(int id, bool pass, const std::string& summary, const std::string& note = "") {
  std::printf("%s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, summary.c_str(),
              note.empty() ? "" : " -- ", note.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

BigReal dec(const char* s, long prec = 256) { return BigReal::parse(s, prec); }

std::string fixture_text(const char* name) {
  std::ifstream in(std::string(TOWERLAB_FIXTURES_DIR) + "/" + name, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  return body.str();
}

// ---------------------------------------------------------------- criterion 1
void criterion_1() {
  struct Row {
    const char* seq;
    Parity parity;
    const char* want;
  };
  const Row rows[] = {
      {"zi", Parity::Even, "85885772008416606762434379473241623070938618180813"},
      {"zi", Parity::Odd, "56778606544394002098000796382530333102219963214866"},
      {"zii", Parity::Even, "77954333600168773503298455024204190801488463615921"},
      {"zii", Parity::Odd, "54877354704085687513069922740691455562600046738030"},
  };
  bool pass = true;
  double worst = 0;
  std::string note;
  for (const auto& row : rows) {
    auto seq = std::string(row.seq) == "zi" ? BaseSequence::zeraoulia_i()
                                            : BaseSequence::zeraoulia_ii();
    auto t0 = std::chrono::steady_clock::now();
    LimitEnclosure enc = enclose_subsequence_limit(seq, row.parity, 50);
    double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (dt >= 30.0) {
      pass = false;
      note += std::string(row.seq) + "/" + parity_name(row.parity) + " took too long; ";
    }
    if (enc.digits(50) != row.want) {
      pass = false;
      note += std::string(row.seq) + "/" + parity_name(row.parity) + " digit mismatch; ";
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "slowest %.2fs", worst);
  report(1, pass, "four 50-digit constants match exactly via certified enclosures",
         note.empty() ? buf : note);
}

// ---------------------------------------------------------------- criterion 2
void criterion_2() {
  const char* want[] = {"0.5",     "0.890899", "0.550457", "0.867251",
                        "0.56342", "0.860843", "0.566835"};
  auto zi = BaseSequence::zeraoulia_i();
  bool pass = true;
  for (int n = 1; n <= 7; ++n) {
    BigReal v = eval_tower(zi, n, 256);
    // 6 significant figures: the printed values are rounded at 6 s.f.
    if (!(abs(v - dec(want[n - 1])) < dec("1.000001e-6"))) pass = false;
  }
  report(2, pass, "a_1..a_7 match the seven reference values to 6 s.f.");
}

// ---------------------------------------------------------------- criterion 3
void criterion_3() {
  Interval k1 = cipra_bounds(BaseSequence::zeraoulia_i(), 1, 256);
  bool lo_ok = abs(k1.lo() - dec("0.5504566141")) < dec("5e-11");   // 10 s.f.
  bool hi_ok = abs(k1.hi() - dec("0.89089871814")) < dec("5e-12");  // 11 s.f.
  report(3, lo_ok && hi_ok,
         "cipra_bounds(k=1) endpoints equal 0.5504566141 and 0.89089871814 at printed "
         "precision");
}

// ---------------------------------------------------------------- criterion 4
void criterion_4() {
  auto zi = BaseSequence::zeraoulia_i();
  Certificate lower =
      dolan_certify(zi, Parity::Even, dec("0.8588"), 7, dec("0.8"), dec("0.033"), 256);
  bool lower_ok = lower.valid();
  // the G-orbit evidence itself: y_7 enclosure strictly below 0.8
  bool orbit_ok = lower.orbit.size() == 8 && lower.orbit.back().hi() < dec("0.8");

  Certificate upper = dolan_term_certificate(zi, Parity::Even, dec("0.8589"), 256);
  bool upper_ok = upper.valid();

  report(4, lower_ok && orbit_ok && upper_ok,
         "certificates give 0.8588 < L < 0.8589 (G-orbit below 0.8 with interval "
         "evidence; even term below 0.8589 at depth " +
             std::to_string(upper.depth) + ")");
}

// ---------------------------------------------------------------- criterion 5
void criterion_5() {
  Lemma3Result good = lemma3_check(dec("0.8"), dec("0.033"), 256);
  Lemma3Result bad = lemma3_check(dec("0.8"), dec("0.2"), 256);
  report(5, good.ok && !bad.ok && !bad.indeterminate,
         "lemma3_check(0.8, 0.033) passes and lemma3_check(0.8, 0.2) fails");
}

// ---------------------------------------------------------------- criterion 6
void criterion_6() {
  // Reference lists as printed. The 0.719 listing omits the recurrence's
  // 5th term (its items 5-9 are the recurrence's items 6-10); it is
  // checked under that alignment, with the true t_5 pinned from the
  // independent oracle.
  const char* ref719[] = {"0.719",    "0.475936", "0.414381", "0.354528", "0.311916",
                          "0.311697", "0.289595", "0.289775", "0.275267"};
  const char* ref711[] = {"0.711",    "0.492079", "0.395766", "0.373025", "0.329171",
                          "0.326702", "0.299306", "0.299673", "0.281777"};
  bool pass = true;
  std::string note;

  ShootingReport r719 = shooting_sequence(dec("0.719"), 10, 256);
  for (int i = 0; i < 4; ++i) {
    if (!(abs(r719.orbit[i] - dec(ref719[i])) < dec("1e-6"))) pass = false;
  }
  if (!(abs(r719.orbit[4] - dec("0.346148")) < dec("1e-6"))) pass = false;
  for (int i = 4; i < 9; ++i) {  // printed item i+1 = orbit item i+2
    if (!(abs(r719.orbit[i + 1] - dec(ref719[i])) < dec("1e-6"))) pass = false;
  }
  if (!(r719.first_violation && r719.first_violation->index == 9)) pass = false;
  note = "0.719 reference list omits one recurrence term; matched under the "
         "documented one-step alignment with violation at recurrence index 9 "
         "(reference index 8)";

  ShootingReport r711 = shooting_sequence(dec("0.711"), 9, 256);
  for (int i = 0; i < 9; ++i) {
    if (!(abs(r711.orbit[i] - dec(ref711[i])) < dec("1e-6"))) pass = false;
  }
  if (!(r711.first_violation && r711.first_violation->index == 8)) pass = false;

  ShootingReport r7144 = shooting_sequence(dec("0.7144"), 25, 256);
  if (r7144.monotone_prefix < 24) pass = false;

  ShootingBisectResult bis = shooting_bisect(dec("0.70"), dec("0.73"), 25, 256);
  if (!(bis.t1_star > dec("0.711") && bis.t1_star < dec("0.719"))) pass = false;
  if (!(bis.bracket.lo() > dec("0.711") && bis.bracket.hi() < dec("0.719"))) pass = false;

  report(6, pass,
         "shooting orbits match the reference lists to 6 s.f.; 0.7144 stays monotone "
         "through 25; bisect lands inside (0.711, 0.719)",
         note);
}

// ---------------------------------------------------------------- criterion 7
void criterion_7() {
  auto zi = BaseSequence::zeraoulia_i();
  bool pass = true;
  BigReal bound = dec("1e-30");
  for (long n = 1; n <= 50; ++n) {
    BigReal t = lambert_tail_seed(zi, n, 256);
    mpz_class nn(n);
    BigReal base = BigReal::of_integer(nn * (nn + 1), 256);
    BigReal resid = abs(t - pow(base, neg(t), MPFR_RNDN));
    if (!(resid <= bound)) pass = false;
  }
  BigReal a1 = eval_tower(zi, 1, 256), a2 = eval_tower(zi, 2, 256);
  BigReal b1 = eval_stabilized(zi, 1, 256), b2 = eval_stabilized(zi, 2, 256);
  if (!(abs(b2 - b1) < abs(a2 - a1))) pass = false;
  report(7, pass,
         "|T_n - (n(n+1))^(-T_n)| <= 1e-30 at 256 bits for n = 1..50; |b2-b1| < |a2-a1|");
}

// ---------------------------------------------------------------- criterion 8
void criterion_8() {
  auto zi = BaseSequence::zeraoulia_i();
  bool pass = true;
  for (long n = 2; n <= 10; ++n) {
    BigReal x = BigReal::of(n, 256);
    if (!(abs(interp_value(zi, x, 256) - eval_tower(zi, n, 256)) < dec("1e-6"))) pass = false;
  }

  std::mt19937_64 rng(90210);
  std::uniform_real_distribution<double> ud(2.0, 20.0);
  BigReal h = dec("1e-8");
  int checked = 0;
  while (checked < 100) {
    double xd = ud(rng);
    double fr = xd - std::floor(xd);
    if (fr < 1e-3 || fr > 1.0 - 1e-3) continue;
    BigReal x = BigReal::of(xd, 256);
    BigReal cf = interp_derivative(zi, x, 256);
    BigReal fd = (interp_value(zi, x + h, 256) - interp_value(zi, x - h, 256)) /
                 (BigReal::of(2L, 256) * h);
    if (!(abs(cf - fd) < abs(fd) * dec("1e-6"))) pass = false;
    ++checked;
  }

  int prev = 0;
  for (long n = 2; n < 20; ++n) {
    int s = interp_derivative(zi, BigReal::of(n, 256) + dec("0.5"), 256).sgn();
    if (s == 0 || (prev != 0 && s != -prev)) pass = false;
    prev = s;
  }
  report(8, pass,
         "A_1(n) = a_n to 1e-6 for n = 2..10; derivative matches finite differences to "
         "rel. 1e-6 on 100 random points; signs alternate per unit interval");
}

// ---------------------------------------------------------------- criterion 9
void criterion_9() {
  auto zii = BaseSequence::zeraoulia_ii();
  RateFit even = estimate_rate(zii, Parity::Even, 4, 24);
  RateFit odd = estimate_rate(zii, Parity::Odd, 5, 25);
  bool band = even.k_hat > 2.0 && even.k_hat < 2.4 && odd.k_hat > 2.0 && odd.k_hat < 2.4;

  std::vector<std::pair<long, double>> synth;
  for (long n = 4; n <= 24; ++n) synth.emplace_back(n, std::pow(n, 2.3));
  RateFit rec = fit_decay_exponent(synth);
  bool synth_ok = std::abs(rec.k_hat - 2.3) < 0.01;

  char buf[128];
  std::snprintf(buf, sizeof buf, "k_hat even %.3f, odd %.3f, synthetic %.4f", even.k_hat,
                odd.k_hat, rec.k_hat);
  report(9, band && synth_ok,
         "ZII decay exponents lie in (2.0, 2.4); synthetic k = 2.3 recovered within 0.01",
         buf);
}

// --------------------------------------------------------------- criterion 10
void criterion_10() {
  bool pass = true;
  std::string note;

  LemmaReport zi = check_dolan_lemmas(BaseSequence::zeraoulia_i(), 100);
  LemmaReport zii = check_dolan_lemmas(BaseSequence::zeraoulia_ii(), 100, 320, 1L << 18);
  if (!(zi.lemma1_ok && zi.lemma2_ok && zii.lemma1_ok && zii.lemma2_ok)) pass = false;
  long indet = zi.indeterminate_count + zii.indeterminate_count;

  std::mt19937_64 rng(20240601);
  for (int s = 0; s < 20; ++s) {
    std::vector<mpq_class> bases;
    std::uniform_int_distribution<long> qd(3, 400);
    for (int i = 0; i < 100; ++i) {
      long q = qd(rng);
      std::uniform_int_distribution<long> pd(1, q - 1);
      bases.emplace_back(pd(rng), q);
    }
    LemmaReport rep = check_dolan_lemmas(BaseSequence::custom(std::move(bases)), 100,
                                         320, 1L << 15);
    if (!(rep.lemma1_ok && rep.lemma2_ok)) {
      pass = false;
      note += "custom sequence " + std::to_string(s) + " violated; ";
    }
    indet += rep.indeterminate_count;
  }
  if (indet > 0) note += std::to_string(indet) + " indeterminate comparisons reported; ";

  // F/G round trip at 50-digit precision
  const long prec50 = 168;
  auto seq = BaseSequence::zeraoulia_i();
  BigReal tol = BigReal::parse("1e-37", prec50);
  for (long n = 1; n <= 20 && pass; ++n) {
    for (int i = 1; i <= 9; ++i) {
      BigReal x = div(BigReal::of(static_cast<long>(i), prec50), BigReal::of(10L, prec50), MPFR_RNDN);
      Interval rt = dolan_G(seq, n, dolan_F(seq, n, Interval::point(x), prec50), prec50);
      if (!(abs(rt.mid() - x) < tol && rt.width() < tol)) {
        pass = false;
        note += "F/G round trip exceeded 1e-37; ";
        break;
      }
    }
  }

  // interval containment fuzz: 1e5 samples, zero violations allowed
  std::mt19937_64 frng(424242);
  auto urand = [&](double a, double b) {
    return std::uniform_real_distribution<double>(a, b)(frng);
  };
  long violations = 0;
  const long fp = 96;
  for (int i = 0; i < 100000; ++i) {
    double alo = urand(0.05, 0.9), ahi = std::min(alo + urand(0.0, 0.09), 0.999);
    double blo = urand(0.05, 0.9), bhi = std::min(blo + urand(0.0, 0.09), 0.999);
    Interval A(BigReal::of(alo, fp), BigReal::of(ahi, fp));
    Interval B(BigReal::of(blo, fp), BigReal::of(bhi, fp));
    BigReal x = BigReal::of(urand(alo, ahi), fp), y = BigReal::of(urand(blo, bhi), fp);
    switch (i % 5) {
      case 0: if (!add(A, B).contains(x + y)) ++violations; break;
      case 1: if (!mul(A, B).contains(x * y)) ++violations; break;
      case 2: if (!exp(A).contains(exp(x))) ++violations; break;
      case 3: if (!log(A).contains(log(x))) ++violations; break;
      case 4: if (!pow_unit_interval(A, B).contains(pow(x, y, MPFR_RNDN))) ++violations; break;
    }
  }
  if (violations != 0) {
    pass = false;
    note += std::to_string(violations) + " containment violations; ";
  }

  report(10, pass,
         "lemma order checks pass for ZI, ZII and 20 random custom sequences to n = 100; "
         "F/G round trip <= 1e-37; containment fuzz (1e5 samples) clean",
         note);
}

// --------------------------------------------------------------- criterion 11
void criterion_11() {
  bool pass = true;
  std::string note;
  std::vector<BFile> files = {
      parse_bfile(fixture_text("b328941.txt"), "A328941"),
      parse_bfile(fixture_text("b328942.txt"), "A328942"),
      parse_bfile(fixture_text("b335846.txt"), "A335846"),
      parse_bfile(fixture_text("b335847.txt"), "A335847"),
  };
  std::vector<LimitEnclosure> encl = {
      enclose_subsequence_limit(BaseSequence::zeraoulia_i(), Parity::Even, 50),
      enclose_subsequence_limit(BaseSequence::zeraoulia_i(), Parity::Odd, 50),
      enclose_subsequence_limit(BaseSequence::zeraoulia_ii(), Parity::Even, 50),
      enclose_subsequence_limit(BaseSequence::zeraoulia_ii(), Parity::Odd, 50),
  };
  try {
    auto mapping = auto_match(files, encl);
    if (mapping.size() != 4) pass = false;
    for (const auto& bf : files) {
      DigitComparison cmp = compare_digits(encl[mapping.at(bf.id)], bf);
      if (cmp.matched_prefix < 40) {
        pass = false;
        note += bf.id + " matched only " + std::to_string(cmp.matched_prefix) + "; ";
      }
    }
  } catch (const Error& e) {
    pass = false;
    note += e.what();
  }

  BFile hurt = files[1];
  hurt.entries[11].second = (hurt.entries[11].second + 1) % 10;
  DigitComparison cmp = compare_digits(encl[0], hurt);
  if (!(cmp.first_mismatch && *cmp.first_mismatch == 12)) {
    pass = false;
    note += "fault injection not located at digit 12; ";
  }

  report(11, pass,
         "auto_match pairs all four ids with matched_prefix >= 40 offline; corrupted "
         "fixture pinpointed at digit 12",
         note);
}

}  // namespace

int main() {
  std::printf("towerlab acceptance suite\n");
  auto t0 = std::chrono::steady_clock::now();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria passed (%.1fs total)\n", 11 - g_failures,
              seconds_since(t0));
  return g_failures;
}
