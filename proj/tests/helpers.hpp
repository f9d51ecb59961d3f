#pragma once

#include <initializer_list>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "kempf/errors.hpp"
#include "kempf/groups.hpp"
#include "kempf/nilpotent.hpp"

namespace kempf::testing {

inline QMat mat(std::initializer_list<std::initializer_list<long>> rows) {
  const long r = static_cast<long>(rows.size());
  const long c = r ? static_cast<long>(rows.begin()->size()) : 0;
  QMat m(r, c);
  long j = 0;
  for (const auto& row : rows) {
    long k = 0;
    for (long v : row) m(j, k++) = v;
    ++j;
  }
  return m;
}

inline WeightedPoint point(std::vector<std::vector<Coord>> rows, const GroupDescriptor& g) {
  std::vector<std::pair<Weight, Rat>> entries;
  entries.reserve(rows.size());
  for (auto& row : rows) entries.emplace_back(Weight(std::move(row)), Rat(1));
  return WeightedPoint(std::move(entries), g);
}

inline Partition contiguous(std::vector<int> parts) {
  Partition p;
  p.parts = std::move(parts);
  int offset = 0;
  for (int d : p.parts) {
    std::vector<int> block(d);
    std::iota(block.begin(), block.end(), offset);
    offset += d;
    p.block_coordinates.push_back(std::move(block));
  }
  return p;
}

/// Code of the ValidationError thrown by `f`, or "" if it does not throw one.
template <typename F>
std::string thrown_code(F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    return e.code();
  } catch (...) {
    return "<other exception>";
  }
  return "<no exception>";
}

}  // namespace kempf::testing
