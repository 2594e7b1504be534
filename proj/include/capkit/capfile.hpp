#pragma once

#include <string>
#include <string_view>

#include "capkit/mask.hpp"

namespace capkit {

/* capv1 text format:
 *   capv1 n=<dim>
 *   <dim> base-3 digits per point, one point per line, digit i (left to
 *   right) = coordinate x_i, '2' standing for -1; '#' starts a comment;
 *   points strictly ascending by index. */
struct CapFile {
  int n = 0;
  Mask points;
};

std::string serialize_cap(int n, const Mask& s);

/* rejects duplicates, unsorted points, and non-caps (unless allow_noncap) */
CapFile parse_cap(std::string_view text, bool allow_noncap = false);

void save_cap(const std::string& path, int n, const Mask& s);
CapFile load_cap(const std::string& path, bool allow_noncap = false);

}  // namespace capkit
