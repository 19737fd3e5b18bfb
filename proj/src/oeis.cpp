#include "towerlab/oeis.hpp"

#include <cctype>
#include <fstream>
#include <random>
#include <regex>
#include <sstream>

#include <httplib.h>

namespace towerlab {

BFile parse_bfile(const std::string& text, const std::string& id) {
  BFile out;
  out.id = id;
  std::istringstream in(text);
  std::string line;
  long lineno = 0;
  std::optional<long long> prev;
  while (std::getline(in, line)) {
    ++lineno;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (line[b] == '#') continue;
    std::istringstream ls(line);
    long long idx, val;
    if (!(ls >> idx >> val)) {
      throw ParseError("b-file line " + std::to_string(lineno) + ": expected 'index value', got '" +
                           line + "'",
                       lineno);
    }
    std::string rest;
    if (ls >> rest) {
      throw ParseError("b-file line " + std::to_string(lineno) + ": trailing content '" + rest + "'",
                       lineno);
    }
    if (prev && idx != *prev + 1) {
      throw ParseError("b-file line " + std::to_string(lineno) + ": gap at index " +
                           std::to_string(*prev + 1),
                       lineno);
    }
    prev = idx;
    out.entries.emplace_back(idx, val);
  }
  if (out.entries.empty()) {
    throw ParseError("b-file has no data lines", lineno);
  }
  return out;
}

std::string serialize_bfile(const BFile& b) {
  std::ostringstream out;
  for (const auto& [idx, val] : b.entries) out << idx << ' ' << val << '\n';
  return out.str();
}

namespace {

std::string bfile_name(const std::string& id) {
  static const std::regex kId("^A[0-9]{6}$");
  if (!std::regex_match(id, kId)) {
    throw UsageError("not an OEIS A-number: '" + id + "'");
  }
  return "b" + id.substr(1) + ".txt";
}

HttpResponse default_transport(const std::string& host, const std::string& path) {
  httplib::SSLClient client(host);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res) {
    throw NetworkError("request to https://" + host + path + " failed: " +
                       httplib::to_string(res.error()));
  }
  return HttpResponse{res->status, res->body};
}

void atomic_write(const std::filesystem::path& target, const std::string& body) {
  std::filesystem::create_directories(target.parent_path());
  std::random_device rd;
  std::filesystem::path tmp =
      target.parent_path() / (".tmp-" + std::to_string(rd()) + target.filename().string());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << body;
    if (!out) throw Error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

std::string fetch_bfile(const std::string& id, const std::filesystem::path& cache_dir,
                        bool offline, const Transport& transport) {
  std::filesystem::path cached = cache_dir / bfile_name(id);
  if (std::filesystem::exists(cached)) {
    std::ifstream in(cached, std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    return body.str();
  }
  if (offline) {
    throw OfflineMissError("offline and no cached b-file for " + id + " under " +
                           cache_dir.string());
  }
  const Transport& t = transport ? transport : Transport(default_transport);
  HttpResponse res = t("oeis.org", "/" + id + "/" + bfile_name(id));
  if (res.status != 200) {
    throw HttpError("GET " + bfile_name(id) + " returned HTTP " + std::to_string(res.status),
                    res.status);
  }
  atomic_write(cached, res.body);
  return res.body;
}

DigitComparison compare_digits(const LimitEnclosure& enclosure, const BFile& bfile) {
  DigitComparison out;
  auto cd = certified_decimal(enclosure.interval,
                              enclosure.decimal_digits_certified + 8);
  if (!cd) {
    throw DomainError("compare_digits: enclosure does not even pin its integer part");
  }
  if (cd->integer_part != "0") {
    throw DomainError("compare_digits: alignment impossible, integer part '" +
                      cd->integer_part + "' (expected a constant in (0,1))");
  }
  const std::string& digits = cd->fraction;
  long available = static_cast<long>(bfile.entries.size());
  if (digits.empty()) {
    out.skipped_uncertain = available;
    return out;
  }

  // Decimal-expansion b-files sometimes carry the integer part as a leading
  // entry; skip one leading 0 when it does not match the first digit run.
  long offset = 0;
  if (available > 0 && bfile.entries[0].second != digits[0] - '0' &&
      bfile.entries[0].second == 0) {
    offset = 1;
  }

  long compared = 0;
  for (long i = 0; i < static_cast<long>(digits.size()); ++i) {
    if (offset + i >= available) break;
    long long want = digits[static_cast<size_t>(i)] - '0';
    long long got = bfile.entries[static_cast<size_t>(offset + i)].second;
    ++compared;
    if (got != want) {
      out.first_mismatch = i + 1;
      return out;
    }
    out.matched_prefix = i + 1;
  }
  out.skipped_uncertain = std::max(0L, available - offset - compared);
  return out;
}

std::map<std::string, std::size_t> auto_match(const std::vector<BFile>& bfiles,
                                              const std::vector<LimitEnclosure>& enclosures) {
  constexpr long kThreshold = 10;
  for (const auto& enc : enclosures) {
    if (enc.decimal_digits_certified < kThreshold) {
      throw UsageError("auto_match needs >= 10 certified digits per enclosure");
    }
  }
  std::ostringstream scores;
  std::map<std::string, std::size_t> mapping;
  std::vector<bool> taken(enclosures.size(), false);
  for (const auto& bf : bfiles) {
    std::optional<std::size_t> found;
    bool ambiguous = false;
    for (std::size_t i = 0; i < enclosures.size(); ++i) {
      DigitComparison cmp = compare_digits(enclosures[i], bf);
      scores << bf.id << " vs enclosure[" << i << "] (" << seq_name(enclosures[i].kind)
             << "," << parity_name(enclosures[i].parity) << "): " << cmp.matched_prefix
             << "; ";
      if (cmp.matched_prefix >= kThreshold) {
        if (found) ambiguous = true;
        found = i;
      }
    }
    if (!found) {
      throw MatchError("auto_match: no enclosure matches " + bf.id + " [" + scores.str() + "]");
    }
    if (ambiguous) {
      throw MatchError("auto_match: ambiguous match for " + bf.id + " [" + scores.str() + "]");
    }
    if (taken[*found]) {
      throw MatchError("auto_match: enclosure matched twice [" + scores.str() + "]");
    }
    taken[*found] = true;
    mapping[bf.id] = *found;
  }
  return mapping;
}

}  // namespace towerlab
