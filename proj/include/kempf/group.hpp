#pragma once

#include <string>
#include <vector>

namespace kempf {

/// One factor of a product group: GL_n or SL_n acting through its diagonal
/// maximal torus on a block of consecutive coordinates.
struct GroupComponent {
  bool special = false;  // true for SL, false for GL
  int rank = 0;          // matrix size n of this factor
};

/// A finite product of general-linear and special-linear factors, realized
/// block-diagonally inside one ambient matrix space of size rank().
/// Cocharacters of the fixed diagonal maximal torus are integer vectors of
/// length rank(); SL factors restrict to the sum-zero sublattice blockwise.
class GroupDescriptor {
 public:
  static GroupDescriptor general_linear(int n);
  static GroupDescriptor special_linear(int n);
  static GroupDescriptor product(std::vector<GroupComponent> components);

  /// Parses tags like "GL:3", "SL:2", "GL:2xSL:3".
  static GroupDescriptor parse(const std::string& tag);

  const std::vector<GroupComponent>& components() const { return components_; }
  int rank() const { return rank_; }

  /// Half-open coordinate ranges [begin, end) of the component blocks.
  const std::vector<std::pair<int, int>>& blocks() const { return blocks_; }

  /// Component index owning ambient coordinate c.
  int component_of(int c) const;

  /// True if any factor is special-linear.
  bool has_special_factor() const;

  std::string tag() const;

  bool operator==(const GroupDescriptor& other) const;

 private:
  explicit GroupDescriptor(std::vector<GroupComponent> components);

  std::vector<GroupComponent> components_;
  std::vector<std::pair<int, int>> blocks_;
  int rank_ = 0;
};

}  // namespace kempf
