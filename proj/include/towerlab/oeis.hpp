#pragma once

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towerlab/analysis.hpp"
#include "towerlab/errors.hpp"

namespace towerlab {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line) : Error(msg), line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

class NetworkError : public Error {
 public:
  using Error::Error;
};

class HttpError : public Error {
 public:
  HttpError(const std::string& msg, int status) : Error(msg), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};

class OfflineMissError : public Error {
 public:
  using Error::Error;
};

class MatchError : public Error {
 public:
  using Error::Error;
};

/// Parsed OEIS b-file: ordered (index, value) entries with indices
/// strictly increasing by one.
struct BFile {
  std::string id;  // "A328942"
  std::vector<std::pair<long long, long long>> entries;
};

/// Parses b-file text: optional '#' comment lines, data lines
/// "index value". Malformed lines, index gaps, and empty files raise
/// ParseError with the offending line number.
BFile parse_bfile(const std::string& text, const std::string& id = "");
std::string serialize_bfile(const BFile& b);

struct HttpResponse {
  int status = 0;
  std::string body;
};
/// (host, path) -> response; tests inject fakes, the default performs an
/// HTTPS GET against oeis.org.
using Transport = std::function<HttpResponse(const std::string& host, const std::string& path)>;

/// Returns the cached copy when present (without touching the transport);
/// otherwise fetches https://oeis.org/{id}/b{digits}.txt and writes the
/// cache atomically (temp file + rename). With offline set, a cache miss
/// raises OfflineMissError instead of using the network.
std::string fetch_bfile(const std::string& id, const std::filesystem::path& cache_dir,
                        bool offline, const Transport& transport = {});

struct DigitComparison {
  long matched_prefix = 0;
  std::optional<long> first_mismatch;  // 1-based fractional digit position
  long skipped_uncertain = 0;          // b-file digits beyond the certified run
};

/// Compares the enclosure's certified expansion digits (both endpoints
/// agree; truncation semantics, matching b-file digit listings) against
/// the b-file, aligned from the first fractional digit. Digits the
/// enclosure does not certify are skipped and counted, never guessed.
DigitComparison compare_digits(const LimitEnclosure& enclosure, const BFile& bfile);

/// Pairs each id with the unique enclosure achieving matched_prefix >= 10;
/// ambiguity or a missing match raises MatchError listing the scores.
std::map<std::string, std::size_t> auto_match(const std::vector<BFile>& bfiles,
                                              const std::vector<LimitEnclosure>& enclosures);

}  // namespace towerlab
