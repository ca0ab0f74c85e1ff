#include "xgsigma/io/format.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "xgsigma/errors.hpp"

namespace xgs::io {

using geom::Cell;
using geom::HalfSpace;
using geom::Relation;
using geom::SphSet;
using group::Coeff;
using group::GroupDescriptor;
using group::SigmaData;
using group::Tri;

namespace {

constexpr std::size_t kMaxDim = 256;
constexpr std::size_t kMaxGenerators = 4096;
constexpr long kMaxPower = 4096;

struct Token {
  std::string text;
  int col = 1;
};

struct Line {
  int no = 0;
  std::vector<Token> toks;
  const Token& head() const { return toks.front(); }
  const std::string& key() const { return toks.front().text; }
  /// Tokens after the key joined by single spaces.
  std::string rest() const {
    std::string out;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (i > 1) out += ' ';
      out += toks[i].text;
    }
    return out;
  }
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++no;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{no, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const unsigned char c = static_cast<unsigned char>(raw[i]);
      if (std::isspace(c)) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      line.toks.push_back(Token{std::string(raw.substr(i, j - i)), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.toks.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

[[noreturn]] void fail(const Line& l, const Token& t, const std::string& msg) { throw ParseError(l.no, t.col, msg); }
[[noreturn]] void fail(const Line& l, const std::string& msg) { throw ParseError(l.no, l.head().col, msg); }

void arity(const Line& l, std::size_t n) {
  if (l.toks.size() != n)
    fail(l, l.toks.size() > n ? l.toks[n] : l.toks.back(),
         "'" + l.key() + "' takes " + std::to_string(n - 1) + " argument(s)");
}

BigInt int_at(const Line& l, const Token& t) {
  try {
    return parse_int(t.text);
  } catch (const Error&) {
    fail(l, t, "expected an integer, got '" + t.text + "'");
  }
}

std::size_t size_at(const Line& l, const Token& t, std::size_t max) {
  BigInt v = int_at(l, t);
  if (v < 0 || v > static_cast<long>(max)) fail(l, t, "value out of range 0.." + std::to_string(max));
  return v.get_ui();
}

Tri tri_at(const Line& l, const Token& t) {
  try {
    return group::parse_tri(t.text);
  } catch (const Error&) {
    fail(l, t, "expected true, false or unknown");
  }
}

class Cursor {
 public:
  Cursor(const std::vector<Line>& lines, std::size_t begin, std::size_t end, const ParseOptions& opts)
      : lines_(lines), pos_(begin), end_(end), opts_(opts) {}

  bool done() const { return pos_ >= end_; }
  const Line& peek() const { return lines_[pos_]; }
  const Line& next() { return lines_[pos_++]; }
  const ParseOptions& opts() const { return opts_; }
  [[noreturn]] void fail_eof(const std::string& what) const {
    const Line& last = lines_[end_ - 1];
    throw ParseError(last.no, last.toks.back().col, "unexpected end of document, " + what);
  }
  void unknown(const Line& l) {
    if (opts_.strict) fail(l, "unknown field '" + l.key() + "'");
  }

 private:
  const std::vector<Line>& lines_;
  std::size_t pos_, end_;
  const ParseOptions& opts_;
};

// ---- sets --------------------------------------------------------------

Cell parse_cell(Cursor& cur, std::size_t dim) {
  const Line& open = cur.next();
  arity(open, 1);
  Cell c{dim, {}};
  while (true) {
    if (cur.done()) cur.fail_eof("missing 'end' of cell");
    const Line& l = cur.next();
    if (l.key() == "end") {
      arity(l, 1);
      return c;
    }
    Relation rel;
    if (l.key() == "ge") rel = Relation::GE;
    else if (l.key() == "eq") rel = Relation::EQ;
    else fail(l, "expected 'ge', 'eq' or 'end' inside a cell, got '" + l.key() + "'");
    if (l.toks.size() != dim + 1)
      fail(l, l.toks.size() > dim + 1 ? l.toks[dim + 1] : l.toks.back(),
           "constraint needs " + std::to_string(dim) + " entries");
    IntVec n(dim);
    for (std::size_t i = 0; i < dim; ++i) n[i] = int_at(l, l.toks[i + 1]);
    if (is_zero(n)) fail(l, l.toks[1], "zero normal");
    c.constraints.push_back(geom::normalized(HalfSpace{std::move(n), rel}));
  }
}

/// Cells until a line that is not 'cell'; with closing, an 'end' line is
/// consumed and terminates the set.
SphSet parse_cells(Cursor& cur, std::size_t dim, bool closing) {
  SphSet s{dim, {}};
  while (!cur.done()) {
    const Line& l = cur.peek();
    if (l.key() == "cell") {
      s.cells.push_back(parse_cell(cur, dim));
    } else if (closing && l.key() == "end") {
      arity(l, 1);
      cur.next();
      return s;
    } else if (closing) {
      fail(l, "expected 'cell' or 'end', got '" + l.key() + "'");
    } else {
      return s;
    }
  }
  if (closing) cur.fail_eof("missing 'end' of set");
  return s;
}

std::size_t parse_dim(Cursor& cur) {
  if (cur.done()) cur.fail_eof("expected 'dim'");
  const Line& l = cur.next();
  if (l.key() != "dim") fail(l, "expected 'dim', got '" + l.key() + "'");
  arity(l, 2);
  std::size_t d = size_at(l, l.toks[1], kMaxDim);
  if (d == 0) fail(l, l.toks[1], "dim must be positive");
  return d;
}

void write_cells(std::ostream& os, const SphSet& s, const std::string& indent) {
  for (const auto& c : s.cells) {
    os << indent << "cell\n";
    for (const auto& h : c.constraints) {
      HalfSpace n = geom::normalized(h);
      os << indent << "  " << (n.rel == Relation::EQ ? "eq" : "ge");
      for (const auto& x : n.normal) os << ' ' << x.get_str();
      os << '\n';
    }
    os << indent << "end\n";
  }
}

// ---- groups ------------------------------------------------------------

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string format_word(const group::Word& w, const std::vector<std::string>& gens) {
  std::string out;
  for (int l : w) {
    if (!out.empty()) out += ' ';
    out += gens[static_cast<std::size_t>(std::abs(l)) - 1];
    if (l < 0) out += "^-1";
  }
  return out;
}

group::Word parse_word(const Line& l, const std::vector<std::string>& gens) {
  group::Word w;
  for (std::size_t i = 1; i < l.toks.size(); ++i) {
    const Token& t = l.toks[i];
    std::string name = t.text;
    long power = 1;
    if (auto caret = name.find('^'); caret != std::string::npos) {
      BigInt p = int_at(l, Token{name.substr(caret + 1), t.col + static_cast<int>(caret) + 1});
      if (p == 0 || abs(p) > kMaxPower) fail(l, t, "exponent must be nonzero and at most " + std::to_string(kMaxPower));
      power = p.get_si();
      name = name.substr(0, caret);
    }
    auto it = std::find(gens.begin(), gens.end(), name);
    if (it == gens.end()) fail(l, t, "unknown generator '" + name + "'");
    const int g = static_cast<int>(it - gens.begin()) + 1;
    for (long k = 0; k < std::abs(power); ++k) w.push_back(power > 0 ? g : -g);
  }
  return w;
}

void write_group_body(std::ostream& os, const GroupDescriptor& g, const std::string& indent) {
  os << indent << "name " << g.name() << '\n';
  os << indent << "generators";
  for (const auto& s : g.generators()) os << ' ' << s;
  os << '\n';
  for (const auto& r : g.relators()) {
    const std::string w = format_word(r, g.generators());
    os << indent << "relator" << (w.empty() ? "" : " ") << w << '\n';
  }
  for (const auto& f : group::flag_fields()) os << indent << "flag " << f.name << ' ' << group::to_string(g.flags().*(f.member)) << '\n';
  os << indent << "ab_rank " << g.ab_rank() << '\n';
  if (!g.torsion().empty()) {
    os << indent << "torsion";
    for (const auto& t : g.torsion()) os << ' ' << t.get_str();
    os << '\n';
  }
  for (std::size_t i = 0; i < g.generators().size(); ++i) {
    os << indent << "ab_coords " << g.generators()[i];
    for (std::size_t k = 0; k < g.ab_rank(); ++k) os << ' ' << g.ab_projection()(i, k).get_str();
    os << '\n';
  }
}

/// Group fields until the end of the cursor or, with closing, an 'end' line.
GroupDescriptor parse_group_body(Cursor& cur, bool closing, const Line* opener) {
  std::optional<std::string> name;
  std::optional<std::vector<std::string>> gens;
  std::vector<const Line*> relator_lines, coord_lines;
  const Line* rank_line = nullptr;
  const Line* torsion_line = nullptr;
  group::Flags flags;
  std::map<std::string, bool> seen_flags;
  bool closed = false;
  while (!cur.done()) {
    const Line& l = cur.peek();
    if (closing && l.key() == "end") {
      arity(l, 1);
      cur.next();
      closed = true;
      break;
    }
    if (!closing && (l.key() == "complement")) break;
    cur.next();
    const std::string& k = l.key();
    if (k == "name") {
      if (l.toks.size() < 2) fail(l, "name is empty");
      name = l.rest();
    } else if (k == "generators") {
      std::vector<std::string> g;
      for (std::size_t i = 1; i < l.toks.size(); ++i) {
        if (!is_identifier(l.toks[i].text)) fail(l, l.toks[i], "bad generator name '" + l.toks[i].text + "'");
        if (std::find(g.begin(), g.end(), l.toks[i].text) != g.end())
          fail(l, l.toks[i], "duplicate generator '" + l.toks[i].text + "'");
        g.push_back(l.toks[i].text);
      }
      if (g.empty()) fail(l, "no generators");
      if (g.size() > kMaxGenerators) fail(l, "too many generators");
      gens = std::move(g);
    } else if (k == "relator") {
      relator_lines.push_back(&l);
    } else if (k == "flag") {
      arity(l, 3);
      bool known = false;
      for (const auto& f : group::flag_fields()) {
        if (l.toks[1].text != f.name) continue;
        known = true;
        if (seen_flags[f.name]) fail(l, l.toks[1], "flag given twice");
        seen_flags[f.name] = true;
        flags.*(f.member) = tri_at(l, l.toks[2]);
      }
      if (!known && cur.opts().strict) fail(l, l.toks[1], "unknown flag '" + l.toks[1].text + "'");
    } else if (k == "ab_rank") {
      arity(l, 2);
      rank_line = &l;
    } else if (k == "torsion") {
      torsion_line = &l;
    } else if (k == "ab_coords") {
      coord_lines.push_back(&l);
    } else {
      cur.unknown(l);
    }
  }
  if (closing && !closed) cur.fail_eof("missing 'end' of group");
  auto missing = [&](const char* what) -> ParseError {
    if (opener) return ParseError(opener->no, opener->head().col, std::string("group lacks '") + what + "'");
    return ParseError(1, 1, std::string("group lacks '") + what + "'");
  };
  if (!name) throw missing("name");
  if (!gens) throw missing("generators");

  std::vector<group::Word> rels;
  for (const Line* l : relator_lines) rels.push_back(parse_word(*l, *gens));
  GroupDescriptor g(*name, *gens, std::move(rels), flags);

  if (rank_line && size_at(*rank_line, rank_line->toks[1], kMaxGenerators) != g.ab_rank())
    fail(*rank_line, rank_line->toks[1], "ab_rank disagrees with the relators (computed " + std::to_string(g.ab_rank()) + ")");
  if (torsion_line) {
    std::vector<BigInt> t;
    for (std::size_t i = 1; i < torsion_line->toks.size(); ++i) t.push_back(int_at(*torsion_line, torsion_line->toks[i]));
    if (t != g.torsion()) fail(*torsion_line, "torsion disagrees with the relators");
  }
  if (!coord_lines.empty()) {
    if (coord_lines.size() != gens->size()) fail(*coord_lines.front(), "need one ab_coords line per generator");
    IntMatrix P(gens->size(), g.ab_rank());
    std::vector<bool> done(gens->size(), false);
    for (const Line* l : coord_lines) {
      if (l->toks.size() != g.ab_rank() + 2) fail(*l, "ab_coords needs a generator and " + std::to_string(g.ab_rank()) + " entries");
      auto it = std::find(gens->begin(), gens->end(), l->toks[1].text);
      if (it == gens->end()) fail(*l, l->toks[1], "unknown generator '" + l->toks[1].text + "'");
      const auto row = static_cast<std::size_t>(it - gens->begin());
      if (done[row]) fail(*l, l->toks[1], "ab_coords given twice");
      done[row] = true;
      for (std::size_t k = 0; k < g.ab_rank(); ++k) P(row, k) = int_at(*l, l->toks[k + 2]);
    }
    try {
      g.set_ab_projection(std::move(P));
    } catch (const Error& e) {
      fail(*coord_lines.front(), std::string("inconsistent abelianization: ") + e.what());
    }
  }
  return g;
}

// ---- sigma -------------------------------------------------------------

SigmaData parse_sigma_body(Cursor& cur) {
  if (cur.done()) cur.fail_eof("expected 'group'");
  const Line& open = cur.next();
  if (open.key() != "group") fail(open, "sigma documents start with a 'group' block");
  arity(open, 1);
  GroupDescriptor g = parse_group_body(cur, true, &open);
  if (g.ab_rank() == 0) fail(open, "abelianization has rank 0; no character sphere");
  SigmaData s(std::move(g));
  std::map<group::SigmaKey, bool> seen;
  while (!cur.done()) {
    const Line& l = cur.next();
    if (l.key() != "complement") {
      cur.unknown(l);
      continue;
    }
    arity(l, 3);
    const std::size_t degree = size_at(l, l.toks[1], 64);
    if (degree == 0) fail(l, l.toks[1], "degree must be at least 1");
    Coeff c;
    try {
      c = group::parse_coeff(l.toks[2].text);
    } catch (const Error&) {
      fail(l, l.toks[2], "coefficient must be z, htpy or q");
    }
    if (degree == 1 && c != Coeff::Z) fail(l, l.toks[2], "degree 1 is stored with coefficient z");
    const group::SigmaKey key{static_cast<int>(degree), c};
    if (seen[key]) fail(l, "complement given twice");
    seen[key] = true;
    s.set_complement(static_cast<int>(degree), c, parse_cells(cur, s.dim(), true));
  }
  s.validate();
  return s;
}

// ---- results and reports -----------------------------------------------

ResultDoc parse_result_body(Cursor& cur) {
  ResultDoc r;
  r.tool.clear();
  std::optional<std::size_t> dim;
  while (!cur.done()) {
    const Line& l = cur.peek();
    const std::string& k = l.key();
    if (k == "dim") {
      dim = parse_dim(cur);
      r.result.set = parse_cells(cur, *dim, false);
      continue;
    }
    cur.next();
    if (k == "tool") r.tool = l.rest();
    else if (k == "operation") r.operation = l.rest();
    else if (k == "input") r.input = l.rest();
    else if (k == "provenance") r.result.provenance = l.rest();
    else if (k == "exactness") {
      arity(l, 2);
      try {
        r.result.exactness = sigma::parse_exactness(l.toks[1].text);
      } catch (const Error&) {
        fail(l, l.toks[1], "unknown exactness label");
      }
    } else if (k == "hypothesis") {
      arity(l, 2);
      r.result.hypotheses.push_back(l.toks[1].text);
    } else if (k == "consumed") {
      arity(l, 3);
      r.result.flags_consumed.emplace_back(l.toks[1].text, tri_at(l, l.toks[2]));
    } else {
      cur.unknown(l);
    }
  }
  if (!dim) cur.fail_eof("result lacks 'dim'");
  return r;
}

Report parse_report_body(Cursor& cur) {
  Report r;
  r.tool.clear();
  while (!cur.done()) {
    const Line& l = cur.next();
    const std::string& k = l.key();
    if (k == "tool") r.tool = l.rest();
    else if (k == "operation") r.operation = l.rest();
    else if (k == "set") {
      arity(l, 3);
      const std::size_t d = size_at(l, l.toks[2], kMaxDim);
      if (d == 0) fail(l, l.toks[2], "dim must be positive");
      r.sets.emplace_back(l.toks[1].text, parse_cells(cur, d, true));
    } else {
      r.entries.emplace_back(k, l.rest());
    }
  }
  return r;
}

}  // namespace

bool ResultDoc::operator==(const ResultDoc& o) const {
  return tool == o.tool && operation == o.operation && input == o.input && result.set == o.result.set &&
         result.exactness == o.result.exactness && result.hypotheses == o.result.hypotheses &&
         result.provenance == o.result.provenance && result.flags_consumed == o.result.flags_consumed;
}

const std::string* Report::find(std::string_view key) const {
  for (const auto& [k, v] : entries)
    if (k == key) return &v;
  return nullptr;
}

const char* kind_name(const Document& d) {
  switch (d.index()) {
    case 0: return "sphset";
    case 1: return "group";
    case 2: return "sigma";
    case 3: return "result";
    default: return "report";
  }
}

std::string serialize(const SphSet& s) {
  std::ostringstream os;
  os << "xgsigma sphset " << kFormatVersion << '\n';
  os << "dim " << s.dim << '\n';
  write_cells(os, s, "");
  return os.str();
}

std::string serialize(const GroupDescriptor& g) {
  std::ostringstream os;
  os << "xgsigma group " << kFormatVersion << '\n';
  write_group_body(os, g, "");
  return os.str();
}

std::string serialize(const SigmaData& s) {
  std::ostringstream os;
  os << "xgsigma sigma " << kFormatVersion << '\n';
  os << "group\n";
  write_group_body(os, s.owner(), "  ");
  os << "end\n";
  for (const auto& [key, set] : s.complements()) {
    os << "complement " << key.degree << ' ' << group::to_string(key.coeff) << '\n';
    write_cells(os, set, "  ");
    os << "end\n";
  }
  return os.str();
}

std::string serialize(const ResultDoc& r) {
  std::ostringstream os;
  os << "xgsigma result " << kFormatVersion << '\n';
  os << "tool " << r.tool << '\n';
  os << "operation " << r.operation << '\n';
  if (!r.input.empty()) os << "input " << r.input << '\n';
  os << "provenance " << r.result.provenance << '\n';
  os << "exactness " << sigma::to_string(r.result.exactness) << '\n';
  for (const auto& h : r.result.hypotheses) os << "hypothesis " << h << '\n';
  for (const auto& [name, t] : r.result.flags_consumed) os << "consumed " << name << ' ' << group::to_string(t) << '\n';
  os << "dim " << r.result.set.dim << '\n';
  write_cells(os, r.result.set, "");
  return os.str();
}

std::string serialize(const Report& r) {
  std::ostringstream os;
  os << "xgsigma report " << kFormatVersion << '\n';
  os << "tool " << r.tool << '\n';
  os << "operation " << r.operation << '\n';
  for (const auto& [k, v] : r.entries) os << k << (v.empty() ? "" : " ") << v << '\n';
  for (const auto& [name, set] : r.sets) {
    os << "set " << name << ' ' << set.dim << '\n';
    write_cells(os, set, "  ");
    os << "end\n";
  }
  return os.str();
}

std::string serialize(const Document& d) {
  return std::visit([](const auto& x) { return serialize(x); }, d);
}

std::vector<Document> parse_stream(std::string_view text, const ParseOptions& opts) {
  const std::vector<Line> lines = tokenize(text);
  std::vector<Document> out;
  std::size_t i = 0;
  while (i < lines.size()) {
    const Line& h = lines[i];
    if (h.key() != "xgsigma") fail(h, "expected a document header 'xgsigma <kind> <version>'");
    if (h.toks.size() != 3) fail(h, "header is 'xgsigma <kind> <version>'");
    const BigInt version = int_at(h, h.toks[2]);
    if (version != kFormatVersion)
      throw Error(ErrorKind::VersionError, "line " + std::to_string(h.no) + ": unsupported format version " +
                                               version.get_str() + " (supported: " + std::to_string(kFormatVersion) + ")");
    std::size_t end = i + 1;
    while (end < lines.size() && lines[end].key() != "xgsigma") ++end;
    Cursor cur(lines, i + 1, end, opts);
    const std::string& kind = h.toks[1].text;
    if (kind == "sphset") {
      const std::size_t d = parse_dim(cur);
      SphSet s = parse_cells(cur, d, false);
      if (!cur.done()) fail(cur.peek(), "unexpected '" + cur.peek().key() + "' in sphset");
      out.emplace_back(std::move(s));
    } else if (kind == "group") {
      out.emplace_back(parse_group_body(cur, false, &h));
      if (!cur.done()) fail(cur.peek(), "unexpected '" + cur.peek().key() + "' in group");
    } else if (kind == "sigma") {
      out.emplace_back(parse_sigma_body(cur));
    } else if (kind == "result") {
      if (end == i + 1) fail(h, "empty result document");
      out.emplace_back(parse_result_body(cur));
    } else if (kind == "report") {
      out.emplace_back(parse_report_body(cur));
    } else {
      fail(h, h.toks[1], "unknown document kind '" + kind + "'");
    }
    i = end;
  }
  return out;
}

Document parse_document(std::string_view text, const ParseOptions& opts) {
  auto docs = parse_stream(text, opts);
  if (docs.size() != 1) throw ParseError(1, 1, "expected exactly one document, found " + std::to_string(docs.size()));
  return std::move(docs.front());
}

std::vector<RatVec> parse_subspace(std::string_view text, std::size_t dim) {
  std::vector<RatVec> out;
  for (const Line& l : tokenize(text)) {
    RatVec v;
    for (const Token& t : l.toks) {
      std::size_t start = 0;
      while (start <= t.text.size()) {
        std::size_t comma = t.text.find(',', start);
        if (comma == std::string::npos) comma = t.text.size();
        std::string item = t.text.substr(start, comma - start);
        if (!item.empty()) {
          try {
            v.push_back(parse_rat(item));
          } catch (const Error&) {
            throw ParseError(l.no, t.col + static_cast<int>(start), "expected a rational, got '" + item + "'");
          }
        }
        start = comma + 1;
      }
    }
    if (v.size() != dim)
      throw ParseError(l.no, l.head().col, "vector needs " + std::to_string(dim) + " entries, got " + std::to_string(v.size()));
    out.push_back(std::move(v));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for '" + path + "'");
}

SphSet load_sphset(const std::string& path) {
  Document d = parse_document(read_file(path));
  if (auto* s = std::get_if<SphSet>(&d)) return std::move(*s);
  if (auto* r = std::get_if<ResultDoc>(&d)) return std::move(r->result.set);
  throw Error(ErrorKind::InvalidArgument, path + ": expected a sphset or result document, got " + kind_name(d));
}

SigmaData load_sigma(const std::string& path) {
  Document d = parse_document(read_file(path));
  if (auto* s = std::get_if<SigmaData>(&d)) return std::move(*s);
  throw Error(ErrorKind::InvalidArgument, path + ": expected a sigma document, got " + kind_name(d));
}

}  // namespace xgs::io
