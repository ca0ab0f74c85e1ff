#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "xgsigma/geometry/sphset.hpp"
#include "xgsigma/group/group.hpp"

namespace xgs::group {

/// Coefficients of an invariant: homological over Z, homotopical, or
/// homological over the field Q.
enum class Coeff { Z, HTPY, FIELD_Q };

const char* to_string(Coeff c);
Coeff parse_coeff(std::string_view s);

struct SigmaKey {
  int degree = 1;
  Coeff coeff = Coeff::Z;
  auto operator<=>(const SigmaKey&) const = default;
};

/// A group with the complements of its Sigma-invariants. Complements are
/// closed sets and the only thing ever stored. Degree 1 does not depend on
/// the coefficients and is kept under Coeff::Z.
class SigmaData {
 public:
  /// Rejects ab_rank 0 and dimension mismatches; validation of the
  /// inclusions between stored sets is separate (validate()).
  explicit SigmaData(GroupDescriptor owner);

  const GroupDescriptor& owner() const noexcept { return owner_; }
  GroupDescriptor& owner() noexcept { return owner_; }
  std::size_t dim() const noexcept { return owner_.ab_rank(); }

  void set_complement(int degree, Coeff coeff, geom::SphSet s);

  /// Stored set only.
  const geom::SphSet* stored(int degree, Coeff coeff) const;

  /// Stored set, or a value forced by theory: degree 0 is empty, and a full
  /// degree-1 complement forces every higher complement to be full.
  std::optional<geom::SphSet> complement(int degree, Coeff coeff) const;

  /// complement() or MissingSigma.
  geom::SphSet require(int degree, Coeff coeff) const;

  const std::map<SigmaKey, geom::SphSet>& complements() const noexcept { return complements_; }

  /// Inclusions that every stored family must satisfy:
  /// degree-n complement within degree-(n+1) complement (same coefficients),
  /// and the homological complement within the homotopical one.
  /// Throws InvalidSigmaData naming the failed inclusion.
  void validate(const geom::Limits& limits = {}) const;

  bool sigma1_is_full(const geom::Limits& limits = {}) const;

  bool operator==(const SigmaData& o) const { return owner_ == o.owner_ && complements_ == o.complements_; }

 private:
  static SigmaKey key(int degree, Coeff coeff);

  GroupDescriptor owner_;
  std::map<SigmaKey, geom::SphSet> complements_;
};

}  // namespace xgs::group
