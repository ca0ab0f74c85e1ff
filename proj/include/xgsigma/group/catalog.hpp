#pragma once

#include <string>
#include <vector>

#include "xgsigma/group/sigma_data.hpp"

namespace xgs::group {

/// Families known to the catalog, as name patterns.
std::vector<std::string> catalog_families();

/// Looks up e.g. "free(2)", "free_abelian(3)", "nonabelian_limit_placeholder(4)"
/// or "bs(1,2)". Throws UnknownCatalogEntry.
///
///  - free(k), k >= 2: degree-1 and degree-2 complements are the full sphere.
///  - free_abelian(n): every complement is empty (degrees 1..4).
///  - nonabelian_limit_placeholder(n): full complements on a sphere of
///    dimension n; stands in for any non-abelian limit group of that rank.
///  - bs(1,m): presentation and abelianization only; complements must be
///    supplied by the user.
SigmaData catalog_lookup(const std::string& name);

/// Generator names a, b, c, ... (x1, x2, ... past 26).
std::vector<std::string> default_generator_names(std::size_t k);

}  // namespace xgs::group
