#include "dessinmetric/group_type.hpp"

#include <cctype>

namespace dessinmetric {

int GroupType::order() const {
  switch (kind) {
    case Kind::Cyclic: return n;
    case Kind::Dihedral: return 2 * n;
    case Kind::A4: return 12;
    case Kind::S4: return 24;
    case Kind::A5: return 60;
    case Kind::Other: return 0;
  }
  return 0;
}

std::string GroupType::tag() const {
  switch (kind) {
    case Kind::Cyclic: return "C" + std::to_string(n);
    case Kind::Dihedral: return "D" + std::to_string(n);
    case Kind::A4: return "A4";
    case Kind::S4: return "S4";
    case Kind::A5: return "A5";
    case Kind::Other: return "Other";
  }
  return "Other";
}

std::string GroupType::display_name() const {
  switch (kind) {
    case Kind::Cyclic: return "Cyclic(" + std::to_string(n) + ")";
    case Kind::Dihedral: return "Dihedral(" + std::to_string(n) + ")";
    default: return tag();
  }
}

std::optional<GroupType> parse_group_tag(const std::string& tag) {
  if (tag == "A4") return GroupType::a4();
  if (tag == "S4") return GroupType::s4();
  if (tag == "A5") return GroupType::a5();
  if (tag.size() < 2 || (tag[0] != 'C' && tag[0] != 'D')) return std::nullopt;
  int n = 0;
  for (std::size_t i = 1; i < tag.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(tag[i]))) return std::nullopt;
    n = n * 10 + (tag[i] - '0');
    if (n > 100000) return std::nullopt;
  }
  if (n < 1) return std::nullopt;
  if (tag[0] == 'C') return GroupType::cyclic(n);
  if (n < 2) return std::nullopt;  // D1 is reported as C2
  return GroupType::dihedral(n);
}

namespace {

int count_of(const OrderCensus& census, int element_order) {
  auto it = census.find(element_order);
  return it == census.end() ? 0 : it->second;
}

}  // namespace

GroupType classify_census(int group_order, const OrderCensus& census, bool abelian) {
  if (group_order <= 0) return GroupType::other();
  if (group_order == 1) return GroupType::cyclic(1);
  if (count_of(census, group_order) > 0) return GroupType::cyclic(group_order);

  if (group_order == 12 && !abelian && count_of(census, 1) == 1 &&
      count_of(census, 2) == 3 && count_of(census, 3) == 8) {
    return GroupType::a4();
  }
  if (group_order == 24 && !abelian && count_of(census, 1) == 1 &&
      count_of(census, 2) == 9 && count_of(census, 3) == 8 && count_of(census, 4) == 6) {
    return GroupType::s4();
  }
  if (group_order == 60 && !abelian && count_of(census, 1) == 1 &&
      count_of(census, 2) == 15 && count_of(census, 3) == 20 && count_of(census, 5) == 24) {
    return GroupType::a5();
  }

  if (group_order % 2 == 0) {
    const int n = group_order / 2;
    const int involutions = n + (n % 2 == 0 ? 1 : 0);
    const bool expect_abelian = (n == 2);
    if (abelian == expect_abelian && count_of(census, n) > 0 &&
        count_of(census, 2) == involutions) {
      return GroupType::dihedral(n);
    }
  }
  return GroupType::other();
}

}  // namespace dessinmetric
