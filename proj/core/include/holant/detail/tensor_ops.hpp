#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

namespace holant::detail {

// Shared indexing convention: a signature of arity n stores 2^n values and
// the FIRST argument is the most significant bit of the index.  This is the
// single place the convention is defined; everything else goes through here.
inline int arg_bit(std::size_t index, int slot, int arity) {
  return static_cast<int>((index >> (arity - 1 - slot)) & 1u);
}

inline std::size_t with_arg_bit(std::size_t index, int slot, int arity, int bit) {
  const std::size_t mask = std::size_t{1} << (arity - 1 - slot);
  return bit ? (index | mask) : (index & ~mask);
}

// Compress the bits of `index` selected by `mask` (slot numbering) into a
// row index, preserving slot order.
inline std::size_t gather_bits(std::size_t index, std::uint32_t mask, int arity) {
  std::size_t out = 0;
  for (int s = 0; s < arity; ++s) {
    if (mask & (1u << s)) out = (out << 1) | arg_bit(index, s, arity);
  }
  return out;
}

// Rank-1 test of the matricisation of vals across (mask, complement).
// Division-free: rows must be pairwise proportional, checked by
// cross-multiplication against the first non-zero row.
template <class S>
bool rank1_split(const std::vector<S>& vals, int arity, std::uint32_t mask) {
  const std::size_t total = vals.size();
  int rbits = 0;
  for (int s = 0; s < arity; ++s)
    if (mask & (1u << s)) ++rbits;
  const int cbits = arity - rbits;
  const std::size_t nrows = std::size_t{1} << rbits;
  const std::size_t ncols = std::size_t{1} << cbits;
  const std::uint32_t cmask = ~mask & ((1u << arity) - 1u);

  std::vector<std::size_t> cell(total);
  for (std::size_t i = 0; i < total; ++i)
    cell[i] = gather_bits(i, mask, arity) * ncols + gather_bits(i, cmask, arity);
  std::vector<const S*> m(total);
  for (std::size_t i = 0; i < total; ++i) m[cell[i]] = &vals[i];

  std::size_t r0 = nrows;
  std::size_t j0 = 0;
  for (std::size_t r = 0; r < nrows && r0 == nrows; ++r) {
    for (std::size_t j = 0; j < ncols; ++j) {
      if (!m[r * ncols + j]->is_zero()) {
        r0 = r;
        j0 = j;
        break;
      }
    }
  }
  if (r0 == nrows) return true;  // all zero
  for (std::size_t r = 0; r < nrows; ++r) {
    if (r == r0) continue;
    for (std::size_t j = 0; j < ncols; ++j) {
      if (j == j0) continue;
      const S lhs = *m[r * ncols + j] * *m[r0 * ncols + j0];
      const S rhs = *m[r * ncols + j0] * *m[r0 * ncols + j];
      if (!(lhs - rhs).is_zero()) return false;
    }
  }
  return true;
}

// Finest partition of the argument set into tensor-factor blocks, as slot
// masks.  A minimal separating set containing a fixed slot is that slot's
// block, because separating sets containing it are closed under
// intersection.
template <class S>
std::vector<std::uint32_t> finest_partition(const std::vector<S>& vals, int arity) {
  std::vector<std::uint32_t> blocks;
  std::uint32_t remaining = (arity >= 32) ? ~0u : ((1u << arity) - 1u);
  while (remaining) {
    const int anchor = __builtin_ctz(remaining);
    std::uint32_t found = 0;
    const std::uint32_t rest = remaining & ~(1u << anchor);
    // enumerate subsets of `rest`, by popcount, as candidate co-members
    std::vector<std::uint32_t> subsets;
    for (std::uint32_t sub = rest;; sub = (sub - 1) & rest) {
      subsets.push_back(sub);
      if (sub == 0) break;
    }
    std::sort(subsets.begin(), subsets.end(), [](std::uint32_t x, std::uint32_t y) {
      const int px = __builtin_popcount(x), py = __builtin_popcount(y);
      return px != py ? px < py : x < y;
    });
    for (std::uint32_t sub : subsets) {
      const std::uint32_t candidate = sub | (1u << anchor);
      if (candidate == remaining) break;  // not a proper split
      if (rank1_split(vals, arity, candidate)) {
        found = candidate;
        break;
      }
    }
    if (!found) found = remaining;
    blocks.push_back(found);
    remaining &= ~found;
  }
  return blocks;
}

// Support of the projection onto the slots of `mask`: the set of row
// patterns carrying a non-zero value.
template <class S>
std::vector<std::size_t> projected_support(const std::vector<S>& vals, int arity,
                                           std::uint32_t mask) {
  const std::size_t nrows = std::size_t{1} << __builtin_popcount(mask);
  std::vector<char> seen(nrows, 0);
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!vals[i].is_zero()) seen[gather_bits(i, mask, arity)] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < nrows; ++r)
    if (seen[r]) out.push_back(r);
  return out;
}

// Apply the 2x2 matrix [[a,b],[c,d]] to one argument slot.
template <class S>
void apply_leg(std::vector<S>& vals, int arity, int slot, const S& a, const S& b,
               const S& c, const S& d) {
  const std::size_t total = vals.size();
  for (std::size_t i = 0; i < total; ++i) {
    if (arg_bit(i, slot, arity) == 0) {
      const std::size_t j = with_arg_bit(i, slot, arity, 1);
      S v0 = a * vals[i] + b * vals[j];
      S v1 = c * vals[i] + d * vals[j];
      vals[i] = std::move(v0);
      vals[j] = std::move(v1);
    }
  }
}

}  // namespace holant::detail
