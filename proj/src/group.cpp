#include "kempf/group.hpp"

#include <sstream>

#include "kempf/errors.hpp"

namespace kempf {

GroupDescriptor::GroupDescriptor(std::vector<GroupComponent> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw ValidationError("EmptyGroup", "a group descriptor needs at least one factor");
  int at = 0;
  for (const auto& c : components_) {
    if (c.rank < 1)
      throw ValidationError("BadRank", "component rank must be a positive integer");
    blocks_.emplace_back(at, at + c.rank);
    at += c.rank;
  }
  rank_ = at;
}

GroupDescriptor GroupDescriptor::general_linear(int n) {
  return GroupDescriptor({GroupComponent{false, n}});
}

GroupDescriptor GroupDescriptor::special_linear(int n) {
  return GroupDescriptor({GroupComponent{true, n}});
}

GroupDescriptor GroupDescriptor::product(std::vector<GroupComponent> components) {
  return GroupDescriptor(std::move(components));
}

GroupDescriptor GroupDescriptor::parse(const std::string& tag) {
  std::vector<GroupComponent> comps;
  std::stringstream ss(tag);
  std::string piece;
  while (std::getline(ss, piece, 'x')) {
    auto colon = piece.find(':');
    if (colon == std::string::npos)
      throw ParseError("group tag piece '" + piece + "' is not of the form GL:n or SL:n");
    std::string kind = piece.substr(0, colon);
    std::string num = piece.substr(colon + 1);
    bool special;
    if (kind == "GL")
      special = false;
    else if (kind == "SL")
      special = true;
    else
      throw ParseError("unknown group kind '" + kind + "' (expected GL or SL)");
    int n = 0;
    try {
      size_t used = 0;
      n = std::stoi(num, &used);
      if (used != num.size()) throw std::invalid_argument(num);
    } catch (const std::exception&) {
      throw ParseError("bad rank '" + num + "' in group tag");
    }
    if (n < 1) throw ParseError("group rank must be positive in tag '" + tag + "'");
    comps.push_back({special, n});
  }
  if (comps.empty()) throw ParseError("empty group tag");
  return GroupDescriptor(std::move(comps));
}

int GroupDescriptor::component_of(int c) const {
  for (size_t i = 0; i < blocks_.size(); ++i)
    if (c >= blocks_[i].first && c < blocks_[i].second) return static_cast<int>(i);
  throw InternalError("coordinate out of range in component_of");
}

bool GroupDescriptor::has_special_factor() const {
  for (const auto& c : components_)
    if (c.special) return true;
  return false;
}

std::string GroupDescriptor::tag() const {
  std::string out;
  for (size_t i = 0; i < components_.size(); ++i) {
    if (i) out += "x";
    out += components_[i].special ? "SL:" : "GL:";
    out += std::to_string(components_[i].rank);
  }
  return out;
}

bool GroupDescriptor::operator==(const GroupDescriptor& other) const {
  if (components_.size() != other.components_.size()) return false;
  for (size_t i = 0; i < components_.size(); ++i)
    if (components_[i].special != other.components_[i].special ||
        components_[i].rank != other.components_[i].rank)
      return false;
  return true;
}

}  // namespace kempf
