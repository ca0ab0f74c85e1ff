#pragma once

// Line-based text documents. Every document starts with
//
//   xgsigma <kind> <version>
//
// and runs to the next header or the end of input. Blank lines and text
// after '#' are ignored, indentation is cosmetic. Output is canonical:
// two-space indentation, fixed field order, lowest-terms numbers.

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/group/sigma_data.hpp"
#include "xgsigma/sigma/calculus.hpp"

namespace xgs::io {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

struct ResultDoc {
  std::string tool = kToolVersion;
  std::string operation;
  std::string input;
  sigma::SigmaResult result;

  bool operator==(const ResultDoc& o) const;
};

/// Ordered key/value lines plus named sets, for verdicts and reports.
struct Report {
  std::string tool = kToolVersion;
  std::string operation;
  std::vector<std::pair<std::string, std::string>> entries;
  std::vector<std::pair<std::string, geom::SphSet>> sets;

  void add(std::string key, std::string value) { entries.emplace_back(std::move(key), std::move(value)); }
  const std::string* find(std::string_view key) const;
  bool operator==(const Report&) const = default;
};

using Document = std::variant<geom::SphSet, group::GroupDescriptor, group::SigmaData, ResultDoc, Report>;

const char* kind_name(const Document& d);

std::string serialize(const geom::SphSet& s);
std::string serialize(const group::GroupDescriptor& g);
std::string serialize(const group::SigmaData& s);
std::string serialize(const ResultDoc& r);
std::string serialize(const Report& r);
std::string serialize(const Document& d);

struct ParseOptions {
  bool strict = true;  // reject unknown fields
};

/// All documents of a stream. Throws ParseError (line, column) or an Error
/// of kind VersionError. Sigma documents are validated after parsing.
std::vector<Document> parse_stream(std::string_view text, const ParseOptions& opts = {});

/// Exactly one document.
Document parse_document(std::string_view text, const ParseOptions& opts = {});

/// One rational vector per line, entries separated by spaces or commas.
std::vector<RatVec> parse_subspace(std::string_view text, std::size_t dim);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Readers that insist on one kind of document.
geom::SphSet load_sphset(const std::string& path);
group::SigmaData load_sigma(const std::string& path);

}  // namespace xgs::io
