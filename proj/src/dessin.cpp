#include "dessinmetric/dessin.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "json.hpp"

#include "dessinmetric/error.hpp"

namespace dessinmetric::dessin {

Permutation identity_permutation(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Permutation compose(const Permutation& lhs, const Permutation& rhs) {
  Permutation out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = lhs[static_cast<std::size_t>(rhs[i])];
  return out;
}

Permutation inverse(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return out;
}

std::vector<int> cycle_index(const Permutation& p) {
  std::vector<int> index(p.size(), -1);
  int next = 0;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (index[start] >= 0) continue;
    for (auto x = start; index[x] < 0; x = static_cast<std::size_t>(p[x])) index[x] = next;
    ++next;
  }
  return index;
}

std::vector<int> cycle_lengths(const Permutation& p) {
  const auto index = cycle_index(p);
  std::vector<int> lengths;
  for (int c : index) {
    if (c >= static_cast<int>(lengths.size())) lengths.resize(static_cast<std::size_t>(c) + 1, 0);
    ++lengths[static_cast<std::size_t>(c)];
  }
  return lengths;
}

int cycle_count(const Permutation& p) { return static_cast<int>(cycle_lengths(p).size()); }

bool is_permutation(std::span<const int> p) {
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    if (x < 0 || x >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(x)]) return false;
    seen[static_cast<std::size_t>(x)] = true;
  }
  return true;
}

bool is_transitive(std::span<const Permutation> generators) {
  if (generators.empty()) return true;
  const std::size_t n = generators.front().size();
  if (n == 0) return true;
  std::vector<bool> seen(n, false);
  std::vector<int> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const int x = stack.back();
    stack.pop_back();
    for (const auto& g : generators) {
      const int y = g[static_cast<std::size_t>(x)];
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = true;
        ++reached;
        stack.push_back(y);
      }
    }
  }
  return reached == n;
}

Dessin::Dessin(Permutation sigma_white, Permutation sigma_black)
    : sigma_white_(std::move(sigma_white)), sigma_black_(std::move(sigma_black)) {
  if (sigma_white_.empty()) throw Error(Errc::NotAPermutation, "a dessin needs at least one dart");
  if (sigma_white_.size() != sigma_black_.size()) {
    throw Error(Errc::NotAPermutation, "sigma_white and sigma_black act on different dart sets");
  }
  if (!is_permutation(sigma_white_)) throw Error(Errc::NotAPermutation, "sigma_white is not a bijection");
  if (!is_permutation(sigma_black_)) throw Error(Errc::NotAPermutation, "sigma_black is not a bijection");
  const Permutation gens[] = {sigma_white_, sigma_black_};
  if (!is_transitive(gens)) {
    throw Error(Errc::Disconnected, "sigma_white and sigma_black do not act transitively on darts");
  }
}

namespace {

Permutation permutation_from_cycles(const nlohmann::json& cycles, int darts, const char* name) {
  if (!cycles.is_array()) {
    throw Error(Errc::MalformedInput, std::string(name) + " must be a list of cycles");
  }
  Permutation p = identity_permutation(darts);
  std::vector<bool> used(static_cast<std::size_t>(darts), false);
  for (const auto& cycle : cycles) {
    if (!cycle.is_array()) {
      throw Error(Errc::MalformedInput, std::string(name) + " cycles must be lists of darts");
    }
    std::vector<int> labels;
    for (const auto& entry : cycle) {
      if (!entry.is_number_integer()) {
        throw Error(Errc::MalformedInput, std::string(name) + " contains a non-integer dart label");
      }
      const auto label = entry.get<long long>();
      if (label < 1 || label > darts) {
        throw Error(Errc::NotAPermutation,
                    std::string(name) + " uses dart " + std::to_string(label) + " outside 1.." +
                        std::to_string(darts));
      }
      const auto dart = static_cast<int>(label - 1);
      if (used[static_cast<std::size_t>(dart)]) {
        throw Error(Errc::NotAPermutation,
                    std::string(name) + " repeats dart " + std::to_string(label));
      }
      used[static_cast<std::size_t>(dart)] = true;
      labels.push_back(dart);
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      p[static_cast<std::size_t>(labels[i])] = labels[(i + 1) % labels.size()];
    }
  }
  return p;
}

nlohmann::json cycles_to_json(const Permutation& p) {
  auto out = nlohmann::json::array();
  std::vector<bool> seen(p.size(), false);
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start] || p[start] == static_cast<int>(start)) {
      seen[start] = true;
      continue;
    }
    auto cycle = nlohmann::json::array();
    for (auto x = start; !seen[x]; x = static_cast<std::size_t>(p[x])) {
      seen[x] = true;
      cycle.push_back(static_cast<int>(x) + 1);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

}  // namespace

Dessin parse_dessin(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::MalformedInput, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::MalformedInput, "dessin must be a JSON object");
  for (const char* key : {"darts", "sigma_white", "sigma_black"}) {
    if (!doc.contains(key)) throw Error(Errc::MalformedInput, std::string("missing key \"") + key + "\"");
  }
  if (!doc["darts"].is_number_integer() || doc["darts"].get<long long>() < 1 ||
      doc["darts"].get<long long>() > 1'000'000) {
    throw Error(Errc::MalformedInput, "\"darts\" must be a positive integer");
  }
  const int darts = doc["darts"].get<int>();
  auto white = permutation_from_cycles(doc["sigma_white"], darts, "sigma_white");
  auto black = permutation_from_cycles(doc["sigma_black"], darts, "sigma_black");
  return Dessin(std::move(white), std::move(black));
}

std::string to_json(const Dessin& d) {
  nlohmann::ordered_json doc;
  doc["darts"] = d.dart_count();
  doc["sigma_white"] = cycles_to_json(d.sigma_white());
  doc["sigma_black"] = cycles_to_json(d.sigma_black());
  return doc.dump();
}

int genus(const Dessin& d) {
  const int chi = cycle_count(d.sigma_white()) + cycle_count(d.sigma_black()) +
                  cycle_count(d.face_permutation()) - d.dart_count();
  return (2 - chi) / 2;
}

Passport passport(const Dessin& d) {
  auto sorted_desc = [](std::vector<int> v) {
    std::sort(v.begin(), v.end(), std::greater<>());
    return v;
  };
  Passport p;
  p.white_degrees = sorted_desc(cycle_lengths(d.sigma_white()));
  p.black_degrees = sorted_desc(cycle_lengths(d.sigma_black()));
  p.face_half_degrees = sorted_desc(cycle_lengths(d.face_permutation()));
  p.degree = d.dart_count();
  return p;
}

TriangulatedMap triangulate(const Dessin& d) {
  const auto n = static_cast<std::size_t>(d.dart_count());
  const auto white = cycle_index(d.sigma_white());
  const auto black = cycle_index(d.sigma_black());
  const auto face = cycle_index(d.face_permutation());

  TriangulatedMap map;
  map.triangle_count = static_cast<int>(2 * n);
  map.butterfly_count = static_cast<int>(n);
  map.triangles.reserve(2 * n);
  for (std::size_t dart = 0; dart < n; ++dart) {
    const auto next_white = static_cast<std::size_t>(d.sigma_white()[dart]);
    map.triangles.push_back({white[dart], black[dart], face[dart], Orientation::Positive});
    map.triangles.push_back({white[dart], black[dart], face[next_white], Orientation::Negative});
  }
  map.butterfly_pairs.reserve(n);
  for (std::size_t dart = 0; dart < n; ++dart) {
    const auto next = static_cast<std::size_t>(d.sigma_black()[dart]);
    map.butterfly_pairs.emplace_back(static_cast<int>(2 * dart), static_cast<int>(2 * next + 1));
  }
  return map;
}

PermGroup automorphisms(const Dessin& d) {
  // A transitive action makes an automorphism determined by the image of
  // dart 0, so each candidate image is propagated along the generators and
  // kept if the propagation is consistent.
  const auto n = static_cast<std::size_t>(d.dart_count());
  const Permutation* gens[] = {&d.sigma_white(), &d.sigma_black()};

  PermGroup group;
  for (std::size_t target = 0; target < n; ++target) {
    Permutation f(n, -1);
    f[0] = static_cast<int>(target);
    std::vector<std::size_t> stack{0};
    bool ok = true;
    while (ok && !stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      for (const auto* g : gens) {
        const auto gx = static_cast<std::size_t>((*g)[x]);
        const int image = (*g)[static_cast<std::size_t>(f[x])];
        if (f[gx] < 0) {
          f[gx] = image;
          stack.push_back(gx);
        } else if (f[gx] != image) {
          ok = false;
          break;
        }
      }
    }
    if (ok && is_permutation(f)) group.elements.push_back(std::move(f));
  }
  return group;
}

int element_order(const Permutation& p) {
  int order = 1;
  for (int len : cycle_lengths(p)) order = std::lcm(order, len);
  return order;
}

Dessin random_dessin(std::mt19937_64& rng, int darts) {
  for (;;) {
    Permutation white = identity_permutation(darts);
    Permutation black = identity_permutation(darts);
    std::shuffle(white.begin(), white.end(), rng);
    std::shuffle(black.begin(), black.end(), rng);
    const Permutation gens[] = {white, black};
    if (is_transitive(gens)) return Dessin(std::move(white), std::move(black));
  }
}

GroupType classify_perm_group(const PermGroup& g) {
  OrderCensus census;
  for (const auto& e : g.elements) ++census[element_order(e)];
  bool abelian = true;
  for (std::size_t i = 0; i < g.elements.size() && abelian; ++i) {
    for (std::size_t j = i + 1; j < g.elements.size(); ++j) {
      if (compose(g.elements[i], g.elements[j]) != compose(g.elements[j], g.elements[i])) {
        abelian = false;
        break;
      }
    }
  }
  return classify_census(g.order(), census, abelian);
}

}  // namespace dessinmetric::dessin
