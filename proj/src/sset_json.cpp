#include "simpkit/sset_json.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>

namespace sk {

json simplex_to_json(const SimplicialSet& k, const SimplexRef& s) {
  return {{"gen", k.gen(s.gen).name}, {"word", s.word().indices}};
}

SimplexRef simplex_from_json(const SimplicialSet& k, const json& j, int dim) {
  std::string name = j.at("gen").get<std::string>();
  int g = k.find(name);
  if (g < 0) throw std::invalid_argument("unknown generator '" + name + "'");
  DegeneracyWord w{j.contains("word") ? j.at("word").get<std::vector<int>>() : std::vector<int>{}};
  if (!w.valid()) throw std::invalid_argument("degeneracy word for '" + name + "' is not strictly decreasing");
  int base = k.gen(g).dim;
  if (dim >= 0 && base + static_cast<int>(w.indices.size()) != dim)
    throw std::invalid_argument("simplex on '" + name + "' has the wrong dimension");
  if (!w.indices.empty() && w.indices.front() > base + static_cast<int>(w.indices.size()) - 1)
    throw std::invalid_argument("degeneracy index out of range on '" + name + "'");
  return {g, w.to_surjection(base)};
}

json sset_to_json(const SimplicialSet& k) {
  json gens = json::object(), faces = json::object();
  for (int d = 0; d <= k.dim(); ++d) {
    std::vector<std::string> names;
    for (int g : k.gens_of_dim(d)) names.push_back(k.gen(g).name);
    std::sort(names.begin(), names.end());
    gens[std::to_string(d)] = names;
    for (int g : k.gens_of_dim(d)) {
      json fl = json::array();
      for (auto& f : k.gen(g).faces) fl.push_back(simplex_to_json(k, f));
      faces[k.gen(g).name] = fl;
    }
  }
  return {{"generators", gens}, {"faces", faces}};
}

SSetPtr sset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("generators")) throw std::invalid_argument("simplicial set: missing 'generators'");
  std::map<int, std::vector<std::string>> by_dim;
  for (auto& [key, names] : j.at("generators").items()) {
    int d = std::stoi(key);
    if (d < 0) throw std::invalid_argument("simplicial set: negative dimension");
    by_dim[d] = names.get<std::vector<std::string>>();
    std::sort(by_dim[d].begin(), by_dim[d].end());
  }
  json faces = j.value("faces", json::object());
  auto k = std::make_shared<SimplicialSet>();
  for (auto& [d, names] : by_dim)
    for (auto& name : names) {
      std::vector<SimplexRef> fl;
      if (d > 0) {
        if (!faces.contains(name)) throw std::invalid_argument("generator '" + name + "': missing faces");
        const json& arr = faces.at(name);
        if (!arr.is_array() || static_cast<int>(arr.size()) != d + 1)
          throw std::invalid_argument("generator '" + name + "': expected " + std::to_string(d + 1) + " faces");
        for (auto& f : arr) {
          try {
            fl.push_back(simplex_from_json(*k, f, d - 1));
          } catch (const std::exception& e) {
            throw std::invalid_argument("generator '" + name + "': " + e.what());
          }
        }
      }
      k->add(name, d, std::move(fl));
    }
  k->finalize();
  return k;
}

json map_to_json(const SimplicialMap& f) {
  json a = json::object();
  for (int g = 0; g < f.src->size(); ++g) a[f.src->gen(g).name] = simplex_to_json(*f.tgt, f.assign[g]);
  return {{"assignment", a}};
}

SimplicialMap map_from_json(const SSetPtr& src, const SSetPtr& tgt, const json& j) {
  SimplicialMap f{src, tgt, {}};
  const json& a = j.at("assignment");
  for (int g = 0; g < src->size(); ++g) {
    const auto& name = src->gen(g).name;
    if (!a.contains(name)) throw std::invalid_argument("map: generator '" + name + "' unassigned");
    f.assign.push_back(simplex_from_json(*tgt, a.at(name), src->gen(g).dim));
  }
  std::string why;
  if (!f.valid(&why)) throw std::invalid_argument("map: " + why);
  return f;
}

json category_to_json(const FiniteCategory& c) {
  json arrows = json::array();
  for (const auto& a : c.arrows) arrows.push_back({{"name", a.name}, {"src", a.src}, {"tgt", a.tgt}});
  return {{"objects", c.objects}, {"arrows", arrows}, {"identity", c.identity}, {"comp", c.comp}};
}

FiniteCategory category_from_json(const json& j) {
  FiniteCategory c;
  c.objects = j.at("objects").get<std::vector<std::string>>();
  for (const auto& a : j.at("arrows"))
    c.arrows.push_back({a.at("src").get<int>(), a.at("tgt").get<int>(), a.at("name").get<std::string>()});
  c.identity = j.at("identity").get<std::vector<int>>();
  c.comp = j.at("comp").get<std::vector<std::vector<int>>>();
  c.validate();
  return c;
}

}  // namespace sk
