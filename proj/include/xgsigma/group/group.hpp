#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xgsigma/matrix.hpp"

namespace xgs::group {

enum class Tri : std::uint8_t { False, True, Unknown };

const char* to_string(Tri t);
Tri parse_tri(std::string_view s);
Tri tri_and(Tri a, Tri b);

/// Hypothesis flags. All default to Unknown.
struct Flags {
  Tri is_fg = Tri::Unknown;
  Tri is_fp2 = Tri::Unknown;
  Tri is_fp = Tri::Unknown;
  Tri gprime_ab_fg = Tri::Unknown;  // G'/G'' finitely generated
  Tri gprime_fg = Tri::Unknown;
  Tri gprime_fp2 = Tri::Unknown;
  Tri gprime_fp = Tri::Unknown;
  Tri is_nonabelian_limit_group = Tri::Unknown;

  bool operator==(const Flags&) const = default;
};

/// Names and accessors in serialization order.
struct FlagField {
  const char* name;
  Tri Flags::*member;
};
const std::vector<FlagField>& flag_fields();

/// Letters are signed 1-based generator indices.
using Word = std::vector<int>;

struct Abelianization {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1
  IntMatrix projection;         // generators x rank
};

/// Exponent sums, SNF, rank/torsion, generator coordinates in Z^rank.
Abelianization abelianize(std::size_t generator_count, const std::vector<Word>& relators);

/// Exponent-sum row of a word; throws IllFormedWord on a bad letter.
IntVec exponent_sums(const Word& w, std::size_t generator_count);

class GroupDescriptor {
 public:
  GroupDescriptor() = default;
  GroupDescriptor(std::string name, std::vector<std::string> generators, std::vector<Word> relators, Flags flags);

  const std::string& name() const noexcept { return name_; }
  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<Word>& relators() const noexcept { return relators_; }
  const Flags& flags() const noexcept { return flags_; }
  Flags& flags() noexcept { return flags_; }

  std::size_t ab_rank() const noexcept { return ab_.rank; }
  const std::vector<BigInt>& torsion() const noexcept { return ab_.torsion; }
  const IntMatrix& ab_projection() const noexcept { return ab_.projection; }

  /// Replaces the character coordinates by another basis of the characters:
  /// P must have ab_rank independent columns killing every relator.
  /// Products use this to keep the coordinates of each factor in its block.
  void set_ab_projection(IntMatrix P);

  /// chi(word) for a character given in Q^ab_rank coordinates.
  Rat evaluate(const RatVec& chi, const Word& w) const;

  bool operator==(const GroupDescriptor& o) const {
    return name_ == o.name_ && generators_ == o.generators_ && relators_ == o.relators_ && flags_ == o.flags_ &&
           ab_.projection == o.ab_.projection;
  }

 private:
  std::string name_;
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
  Flags flags_;
  Abelianization ab_;
};

/// Commutator word [x, y] = x y x^-1 y^-1 on 1-based generator indices.
Word commutator(int x, int y);

/// Free inverse of a word.
Word inverse(const Word& w);

}  // namespace xgs::group
