// towerlab: high-precision evaluation, analysis, and certified bounds for
// the iterated-exponential sequences with bases 1/(k(k+1)) and k/(k+1)!.
//
// Exit codes: 0 success, 2 usage, 3 computation failure, 4 certificate
// invalid, 5 OEIS digit mismatch.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>

#include "towerlab/analysis.hpp"
#include "towerlab/certify.hpp"
#include "towerlab/interpolation.hpp"
#include "towerlab/oeis.hpp"

using namespace towerlab;
using nlohmann::json;

namespace {

constexpr const char* kArtifactVersion = "1";

struct RunConfig {
  std::string command;
  std::string seq = "zi";
  std::string parity = "even";
  long digits = 50;
  long precision = 256;
  std::string format = "text";
  std::string cache_dir;
  bool offline = false;
  bool no_cache = false;
  bool timing = false;
  json extra;  // command-specific flags

  json to_json() const {
    json j;
    j["command"] = command;
    j["seq"] = seq;
    j["parity"] = parity;
    j["digits"] = digits;
    j["precision"] = precision;
    j["format"] = format;
    j["cache_dir"] = cache_dir;
    j["offline"] = offline;
    j["no_cache"] = no_cache;
    j["version"] = kArtifactVersion;
    for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
    return j;
  }
};

BaseSequence sequence_from_selector(const std::string& sel) {
  if (sel == "zi") return BaseSequence::zeraoulia_i();
  if (sel == "zii") return BaseSequence::zeraoulia_ii();
  if (sel.rfind("custom:", 0) == 0) {
    std::string path = sel.substr(7);
    std::ifstream in(path);
    if (!in.good()) throw UsageError("cannot open custom base file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return BaseSequence::custom_from_text(text.str());
  }
  throw UsageError("unknown sequence selector '" + sel + "' (zi | zii | custom:<path>)");
}

Parity parity_from_name(const std::string& p) {
  if (p == "even") return Parity::Even;
  if (p == "odd") return Parity::Odd;
  throw UsageError("parity must be 'even' or 'odd'");
}

std::string default_cache_dir() {
  if (const char* env = std::getenv("TOWERLAB_CACHE_DIR")) return env;
  if (const char* home = std::getenv("HOME")) {
    return std::string(home) + "/.cache/towerlab";
  }
  return ".towerlab-cache";
}

void emit(const RunConfig& cfg, const json& result, bool cached,
          std::chrono::steady_clock::time_point started, const std::string& text_form) {
  if (cfg.format == "json") {
    json doc;
    doc["config"] = cfg.to_json();
    doc["result"] = result;
    if (cfg.timing) {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - started)
                    .count();
      doc["meta"] = {{"cached", cached}, {"elapsed_ms", ms}};
    }
    std::cout << doc.dump(2) << '\n';
  } else {
    std::cout << text_form;
  }
}

std::filesystem::path cache_key_path(const RunConfig& cfg) {
  std::string name = cfg.command + "-" + cfg.seq + "-" + cfg.parity + "-" +
                     std::to_string(cfg.digits) + "-p" + std::to_string(cfg.precision) +
                     ".json";
  return std::filesystem::path(cfg.cache_dir) / ("v" + std::string(kArtifactVersion)) / name;
}

std::optional<json> cache_load(const RunConfig& cfg) {
  if (cfg.no_cache) return std::nullopt;
  auto p = cache_key_path(cfg);
  std::ifstream in(p);
  if (!in.good()) return std::nullopt;
  try {
    return json::parse(in);
  } catch (...) {
    return std::nullopt;
  }
}

void cache_store(const RunConfig& cfg, const json& result) {
  if (cfg.no_cache) return;
  auto p = cache_key_path(cfg);
  std::error_code ec;
  std::filesystem::create_directories(p.parent_path(), ec);
  if (ec) return;
  auto tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    out << result.dump(2);
    if (!out) return;
  }
  std::filesystem::rename(tmp, p, ec);
}

json limit_to_json(const LimitEnclosure& enc, long digits) {
  json j;
  j["seq"] = seq_name(enc.kind);
  j["parity"] = parity_name(enc.parity);
  j["digits"] = enc.digits(digits);
  j["lo"] = enc.interval.lo().serialize();
  j["hi"] = enc.interval.hi().serialize();
  j["depth"] = enc.depth_used;
  j["decimal_digits_certified"] = enc.decimal_digits_certified;
  return j;
}

int cmd_table(const RunConfig& cfg, long n_max) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  json rows = json::array();
  std::ostringstream text;
  text << "n a_n\n";
  for (long n = 1; n <= n_max; ++n) {
    TowerValue tv = make_tower_value(seq, n, cfg.precision);
    std::string d = std::get<BigReal>(tv.value).decimal_fixed(10);
    rows.push_back({{"n", tv.depth}, {"a_n", d}});
    text << tv.depth << ' ' << d << '\n';
  }
  emit(cfg, {{"rows", rows}}, false, started, text.str());
  return 0;
}

int cmd_limits(const RunConfig& cfg) {
  auto started = std::chrono::steady_clock::now();
  if (cfg.digits < 1) throw UsageError("limits: --digits must be >= 1");
  if (auto hit = cache_load(cfg)) {
    emit(cfg, *hit, true, started, "0." + hit->at("digits").get<std::string>() + "\n");
    return 0;
  }
  BaseSequence seq = sequence_from_selector(cfg.seq);
  LimitEnclosure enc =
      enclose_subsequence_limit(seq, parity_from_name(cfg.parity), cfg.digits);
  json result = limit_to_json(enc, cfg.digits);
  cache_store(cfg, result);
  emit(cfg, result, false, started, "0." + result.at("digits").get<std::string>() + "\n");
  return 0;
}

int cmd_certify_dolan(const RunConfig& cfg, const std::string& candidate, long depth,
                      const std::string& theta, const std::string& tmax, bool upper) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  Parity parity = parity_from_name(cfg.parity);
  BigReal c = BigReal::parse(candidate, cfg.precision);
  bool orbit_kind = (parity == Parity::Even) != upper;
  Certificate cert =
      orbit_kind ? dolan_certify(seq, parity, c, depth, BigReal::parse(theta, cfg.precision),
                                 BigReal::parse(tmax, cfg.precision), cfg.precision)
                 : dolan_term_certificate(seq, parity, c, cfg.precision);
  json result;
  result["certificate"] = cert.to_json();
  result["valid"] = cert.valid();
  std::ostringstream text;
  text << cert_kind_name(cert.kind) << " certificate for " << candidate << ": "
       << (cert.valid() ? "VALID" : "INVALID") << '\n';
  for (const auto& ck : cert.checks) {
    text << "  [" << (ck.pass ? "ok" : "FAIL") << "] " << ck.name << ": " << ck.evidence
         << '\n';
  }
  emit(cfg, result, false, started, text.str());
  return cert.valid() ? 0 : 4;
}

int cmd_certify_cipra(const RunConfig& cfg, long k) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  Certificate cert = cipra_certificate(seq, k, cfg.precision);
  Interval bounds = cipra_bounds(seq, k, cfg.precision);
  json result;
  result["certificate"] = cert.to_json();
  result["valid"] = cert.valid();
  result["interval"] = {bounds.lo().serialize(), bounds.hi().serialize()};
  std::ostringstream text;
  text << "cipra bounds (k=" << k << "): " << bounds.to_string(14) << '\n';
  emit(cfg, result, false, started, text.str());
  return cert.valid() ? 0 : 4;
}

int cmd_shoot(const RunConfig& cfg, const std::string& t1, long horizon) {
  auto started = std::chrono::steady_clock::now();
  ShootingReport rep = shooting_sequence(BigReal::parse(t1, cfg.precision), horizon,
                                         cfg.precision);
  json result = rep.to_json();
  std::ostringstream text;
  text << "t1=" << t1 << " horizon=" << horizon << " monotone_prefix="
       << rep.monotone_prefix;
  if (rep.first_violation) {
    text << " first_violation=" << rep.first_violation->index << " ("
         << rep.first_violation->direction << ")";
  }
  if (rep.domain_exit) text << " domain_exit=" << *rep.domain_exit;
  text << '\n';
  for (size_t i = 0; i < rep.orbit.size(); ++i) {
    text << (i + 1) << ' ' << rep.orbit[i].decimal_fixed(9) << '\n';
  }
  emit(cfg, result, false, started, text.str());
  return 0;
}

int cmd_shoot_bisect(const RunConfig& cfg, const std::string& lo, const std::string& hi,
                     long horizon) {
  auto started = std::chrono::steady_clock::now();
  ShootingBisectResult r = shooting_bisect(BigReal::parse(lo, cfg.precision),
                                           BigReal::parse(hi, cfg.precision), horizon,
                                           cfg.precision);
  json result = r.to_json();
  std::ostringstream text;
  text << "t1_star=" << r.t1_star.decimal_fixed(9) << " bracket=" << r.bracket.to_string(10)
       << " best_prefix=" << r.best_prefix << " unimodal=" << (r.unimodal ? "yes" : "no")
       << '\n';
  emit(cfg, result, false, started, text.str());
  return 0;
}

int cmd_stabilized(const RunConfig& cfg, long n_max) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  if (seq.kind() != SeqKind::ZeraouliaI) {
    throw UsageError("stabilized towers are defined for --seq zi");
  }
  json rows = json::array();
  std::ostringstream text;
  text << "n a_n b_n\n";
  for (long n = 1; n <= n_max; ++n) {
    std::string a = eval_tower(seq, n, cfg.precision).decimal_fixed(10);
    std::string b = eval_stabilized(seq, n, cfg.precision).decimal_fixed(10);
    rows.push_back({{"n", n}, {"a_n", a}, {"b_n", b}});
    text << n << ' ' << a << ' ' << b << '\n';
  }
  emit(cfg, {{"rows", rows}}, false, started, text.str());
  return 0;
}

int cmd_interp(const RunConfig& cfg, const std::vector<std::string>& xs, bool derivative,
               long product_m) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  std::ostringstream csv;
  json result;
  if (product_m > 0) {
    csv << "m,term,product\n";
    json rows = json::array();
    for (const auto& row : product_diagnostic(seq, product_m, cfg.precision)) {
      std::string t = row.term.decimal(20), p = row.product.decimal(20);
      csv << row.m << ',' << t << ',' << p << '\n';
      rows.push_back({{"m", row.m}, {"term", t}, {"product", p}});
    }
    result["rows"] = rows;
  } else {
    csv << (derivative ? "x,A1,A1_prime\n" : "x,A1\n");
    json rows = json::array();
    for (const auto& xs_i : xs) {
      BigReal x = BigReal::parse(xs_i, cfg.precision);
      std::string v = interp_value(seq, x, cfg.precision).decimal(20);
      json row = {{"x", xs_i}, {"A1", v}};
      csv << xs_i << ',' << v;
      if (derivative) {
        std::string d = interp_derivative(seq, x, cfg.precision).decimal(20);
        csv << ',' << d;
        row["A1_prime"] = d;
      }
      csv << '\n';
      rows.push_back(row);
    }
    result["rows"] = rows;
  }
  emit(cfg, result, false, started, csv.str());
  return 0;
}

int cmd_rate(const RunConfig& cfg, long n_min, long n_max) {
  auto started = std::chrono::steady_clock::now();
  BaseSequence seq = sequence_from_selector(cfg.seq);
  RateFit fit = estimate_rate(seq, parity_from_name(cfg.parity), n_min, n_max);
  json result;
  result["seq"] = cfg.seq;
  result["parity"] = cfg.parity;
  result["k_hat"] = fit.k_hat;
  result["c_hat"] = fit.c_hat;
  result["residual"] = fit.residual;
  result["n_min"] = fit.n_min;
  result["n_max"] = fit.n_max;
  result["points_used"] = fit.points_used;
  result["dropped"] = fit.dropped;
  std::ostringstream text;
  text << "k_hat=" << fit.k_hat << " c_hat=" << fit.c_hat << " residual=" << fit.residual
       << " points=" << fit.points_used << " dropped=" << fit.dropped.size() << '\n';
  emit(cfg, result, false, started, text.str());
  return 0;
}

int cmd_oeis_compare(const RunConfig& cfg, const std::string& id,
                     const std::string& fixture_path) {
  auto started = std::chrono::steady_clock::now();
  std::string body;
  if (!fixture_path.empty()) {
    std::ifstream in(fixture_path, std::ios::binary);
    if (!in.good()) throw UsageError("cannot open fixture '" + fixture_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    body = text.str();
  } else {
    body = fetch_bfile(id, cfg.cache_dir, cfg.offline);
  }
  BFile bf = parse_bfile(body, id);

  std::vector<LimitEnclosure> encl;
  std::vector<std::pair<std::string, std::string>> names;
  for (const auto& sel : {std::string("zi"), std::string("zii")}) {
    for (Parity p : {Parity::Even, Parity::Odd}) {
      encl.push_back(
          enclose_subsequence_limit(sequence_from_selector(sel), p, cfg.digits));
      names.emplace_back(sel, parity_name(p));
    }
  }
  long best = -1;
  DigitComparison best_cmp;
  size_t best_i = 0;
  for (size_t i = 0; i < encl.size(); ++i) {
    DigitComparison cmp = compare_digits(encl[i], bf);
    if (cmp.matched_prefix > best) {
      best = cmp.matched_prefix;
      best_cmp = cmp;
      best_i = i;
    }
  }
  json result;
  result["id"] = id;
  result["seq"] = names[best_i].first;
  result["parity"] = names[best_i].second;
  result["matched_prefix"] = best_cmp.matched_prefix;
  result["first_mismatch"] =
      best_cmp.first_mismatch ? json(*best_cmp.first_mismatch) : json(nullptr);
  result["skipped_uncertain"] = best_cmp.skipped_uncertain;
  std::ostringstream text;
  text << id << " ~ " << names[best_i].first << '/' << names[best_i].second
       << " matched_prefix=" << best_cmp.matched_prefix;
  if (best_cmp.first_mismatch) text << " first_mismatch=" << *best_cmp.first_mismatch;
  text << " skipped=" << best_cmp.skipped_uncertain << '\n';
  emit(cfg, result, false, started, text.str());
  bool ok = !best_cmp.first_mismatch.has_value() && best_cmp.matched_prefix >= 10;
  return ok ? 0 : 5;
}

int cmd_oeis_fetch(const RunConfig& cfg, const std::string& id) {
  auto started = std::chrono::steady_clock::now();
  std::string body = fetch_bfile(id, cfg.cache_dir, cfg.offline);
  BFile bf = parse_bfile(body, id);
  json result;
  result["id"] = id;
  result["entries"] = bf.entries.size();
  result["cache_file"] = (std::filesystem::path(cfg.cache_dir) /
                          ("b" + id.substr(1) + ".txt"))
                             .string();
  emit(cfg, result, false, started,
       id + ": " + std::to_string(bf.entries.size()) + " entries cached\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"power-tower sequence laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  cfg.cache_dir = default_cache_dir();
  bool json_flag = false;
  app.add_option("--precision", cfg.precision, "working precision in bits (>= 64)")
      ->capture_default_str();
  app.add_option("--format", cfg.format, "text | json | csv")->capture_default_str();
  app.add_flag("--json", json_flag, "shorthand for --format json");
  app.add_option("--cache-dir", cfg.cache_dir, "results/b-file cache directory")
      ->capture_default_str();
  app.add_flag("--offline", cfg.offline, "forbid network access");
  app.add_flag("--no-cache", cfg.no_cache, "bypass the results cache");
  app.add_flag("--timing", cfg.timing, "include timing metadata in JSON output");

  auto* table = app.add_subcommand("table", "print n, a_n rows");
  long table_n = 7;
  table->add_option("--seq", cfg.seq, "zi | zii | custom:<path>")->capture_default_str();
  table->add_option("--n", table_n, "number of rows")->capture_default_str();

  auto* limits = app.add_subcommand("limits", "certified subsequence-limit digits");
  limits->add_option("--seq", cfg.seq)->capture_default_str();
  limits->add_option("--parity", cfg.parity, "even | odd")->capture_default_str();
  limits->add_option("--digits", cfg.digits, "certified decimal digits to emit")
      ->capture_default_str();

  auto* certify = app.add_subcommand("certify", "machine-checkable bounds");
  certify->fallthrough();
  auto* dolan = certify->add_subcommand("dolan", "G-orbit / term certificates");
  dolan->fallthrough();
  std::string cand = "0.8588", theta = "0.8", tmax = "0.033";
  long depth = 7;
  bool upper = false;
  dolan->add_option("--seq", cfg.seq)->capture_default_str();
  dolan->add_option("--parity", cfg.parity)->capture_default_str();
  dolan->add_option("--candidate", cand, "bound candidate in (0,1)")->capture_default_str();
  dolan->add_option("--depth", depth, "G-orbit depth m")->capture_default_str();
  dolan->add_option("--theta", theta)->capture_default_str();
  dolan->add_option("--tmax", tmax)->capture_default_str();
  dolan->add_flag("--upper", upper, "request the dolan_upper kind");
  auto* cipra = certify->add_subcommand("cipra", "truncation enclosure certificate");
  cipra->fallthrough();
  long cipra_k = 1;
  cipra->add_option("--seq", cfg.seq)->capture_default_str();
  cipra->add_option("--k", cipra_k, "bracketing index")->capture_default_str();

  auto* shoot = app.add_subcommand("shoot", "candidate-limit shooting orbits");
  std::string t1 = "0.7144", blo = "0.70", bhi = "0.73";
  long horizon = 25;
  bool bisect = false;
  shoot->add_option("--t1", t1, "orbit start")->capture_default_str();
  shoot->add_option("--n", horizon, "horizon")->capture_default_str();
  shoot->add_flag("--bisect", bisect, "maximize the monotone prefix over [--lo, --hi]");
  shoot->add_option("--lo", blo)->capture_default_str();
  shoot->add_option("--hi", bhi)->capture_default_str();

  auto* stab = app.add_subcommand("stabilized", "Lambert-seeded towers b_n");
  long stab_n = 5;
  stab->add_option("--seq", cfg.seq)->capture_default_str();
  stab->add_option("--n", stab_n, "number of rows")->capture_default_str();

  auto* interp = app.add_subcommand("interp", "smooth interpolant CSV");
  std::vector<std::string> interp_x;
  bool interp_deriv = false;
  long interp_product = 0;
  interp->add_option("--seq", cfg.seq)->capture_default_str();
  interp->add_option("--x", interp_x, "evaluation points (repeatable)");
  interp->add_flag("--derivative", interp_deriv, "add the closed-form derivative column");
  interp->add_option("--product", interp_product,
                     "emit the product diagnostic up to this m instead");

  auto* rate = app.add_subcommand("rate", "decay-exponent fit");
  long rate_min = 4, rate_max = 24;
  rate->add_option("--seq", cfg.seq)->capture_default_str();
  rate->add_option("--parity", cfg.parity)->capture_default_str();
  rate->add_option("--min", rate_min)->capture_default_str();
  rate->add_option("--max", rate_max)->capture_default_str();

  auto* oeis = app.add_subcommand("oeis", "b-file comparison");
  oeis->fallthrough();
  auto* ocmp = oeis->add_subcommand("compare", "compare certified digits to a b-file");
  ocmp->fallthrough();
  std::string oeis_id = "A328942", fixture_path;
  ocmp->add_option("--id", oeis_id, "OEIS A-number")->capture_default_str();
  ocmp->add_option("--digits", cfg.digits, "certified digits to compute")
      ->capture_default_str();
  ocmp->add_option("--fixture", fixture_path, "local b-file path (skips cache/network)");
  ocmp->add_flag("--offline", cfg.offline);
  auto* ofetch = oeis->add_subcommand("fetch", "fetch and cache a b-file");
  ofetch->fallthrough();
  ofetch->add_option("--id", oeis_id)->capture_default_str();
  ofetch->add_flag("--offline", cfg.offline);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (json_flag) cfg.format = "json";
  if (cfg.precision < 64) {
    std::cerr << "error: --precision must be >= 64\n";
    return 2;
  }

  try {
    if (table->parsed()) {
      cfg.command = "table";
      cfg.extra["n"] = table_n;
      return cmd_table(cfg, table_n);
    }
    if (limits->parsed()) {
      cfg.command = "limits";
      return cmd_limits(cfg);
    }
    if (dolan->parsed()) {
      cfg.command = "certify-dolan";
      cfg.extra = {{"candidate", cand}, {"depth", depth}, {"theta", theta},
                   {"tmax", tmax},      {"upper", upper}};
      return cmd_certify_dolan(cfg, cand, depth, theta, tmax, upper);
    }
    if (cipra->parsed()) {
      cfg.command = "certify-cipra";
      cfg.extra["k"] = cipra_k;
      return cmd_certify_cipra(cfg, cipra_k);
    }
    if (shoot->parsed()) {
      cfg.command = bisect ? "shoot-bisect" : "shoot";
      if (bisect) {
        cfg.extra = {{"lo", blo}, {"hi", bhi}, {"n", horizon}};
        return cmd_shoot_bisect(cfg, blo, bhi, horizon);
      }
      cfg.extra = {{"t1", t1}, {"n", horizon}};
      return cmd_shoot(cfg, t1, horizon);
    }
    if (stab->parsed()) {
      cfg.command = "stabilized";
      cfg.extra["n"] = stab_n;
      return cmd_stabilized(cfg, stab_n);
    }
    if (interp->parsed()) {
      cfg.command = "interp";
      cfg.format = cfg.format == "json" ? "json" : "csv";
      cfg.extra = {{"x", interp_x}, {"derivative", interp_deriv},
                   {"product", interp_product}};
      if (interp_product <= 0 && interp_x.empty()) {
        throw UsageError("interp: pass --x points or --product m");
      }
      return cmd_interp(cfg, interp_x, interp_deriv, interp_product);
    }
    if (rate->parsed()) {
      cfg.command = "rate";
      cfg.extra = {{"min", rate_min}, {"max", rate_max}};
      return cmd_rate(cfg, rate_min, rate_max);
    }
    if (ocmp->parsed()) {
      cfg.command = "oeis-compare";
      cfg.extra = {{"id", oeis_id}, {"fixture", fixture_path}};
      return cmd_oeis_compare(cfg, oeis_id, fixture_path);
    }
    if (ofetch->parsed()) {
      cfg.command = "oeis-fetch";
      cfg.extra = {{"id", oeis_id}};
      return cmd_oeis_fetch(cfg, oeis_id);
    }
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const MatchError& e) {
    std::cerr << "oeis mismatch: " << e.what() << '\n';
    return 5;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
