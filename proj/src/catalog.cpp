#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "netsyn/network.hpp"

namespace netsyn {

namespace {

struct SlotDef {
  const char* name;
  int i, j;
};

using Table = std::array<SlotDef, 5>;

// Internal nodes are 2 and 3; terminals 0 and 1.
struct Family {
  int number;
  bool series_parallel;
  Table base;   // member a (and c, with spring/inerter slots renamed)
  Table dual;   // member b (renamed) and d (plain)
  std::string members;
};

// Bridge edge order shared by all non-series-parallel families.
constexpr std::array<std::pair<int, int>, 5> kBridgeEdges{
    {{0, 2}, {0, 3}, {2, 1}, {3, 1}, {2, 3}}};

Table bridge_table(const std::array<const char*, 5>& names) {
  Table t{};
  for (size_t k = 0; k < 5; ++k) t[k] = SlotDef{names[k], kBridgeEdges[k].first, kBridgeEdges[k].second};
  return t;
}

const std::vector<Family>& families() {
  static const std::vector<Family> fams = [] {
    std::vector<Family> f;
    f.push_back({1, true,
                 {{{"c1", 0, 1}, {"c2", 0, 2}, {"k1", 2, 1}, {"k2", 2, 3}, {"b1", 3, 1}}},
                 {{{"c1", 0, 2}, {"c2", 2, 1}, {"k1", 2, 3}, {"k2", 3, 1}, {"b1", 3, 1}}},
                 "ab"});
    f.push_back({2, true,
                 {{{"c1", 0, 1}, {"k1", 0, 2}, {"c2", 0, 3}, {"k2", 3, 2}, {"b1", 2, 1}}},
                 {{{"c1", 0, 2}, {"k1", 2, 3}, {"c2", 3, 1}, {"k2", 3, 1}, {"b1", 2, 1}}},
                 "abcd"});
    f.push_back({3, true,
                 {{{"c1", 0, 1}, {"k1", 0, 2}, {"c2", 2, 3}, {"k2", 3, 1}, {"b1", 2, 1}}},
                 {{{"c1", 0, 2}, {"k1", 2, 1}, {"c2", 2, 3}, {"k2", 2, 3}, {"b1", 3, 1}}},
                 "abcd"});
    f.push_back({4, true,
                 {{{"c1", 0, 1}, {"k1", 0, 2}, {"c2", 2, 1}, {"k2", 2, 3}, {"b1", 3, 1}}},
                 {{{"c1", 0, 2}, {"k1", 2, 1}, {"c2", 2, 3}, {"k2", 3, 1}, {"b1", 3, 1}}},
                 "abcd"});
    f.push_back({5, true,
                 {{{"c1", 0, 2}, {"k1", 2, 1}, {"c2", 0, 3}, {"k2", 3, 1}, {"b1", 3, 1}}},
                 {{{"c1", 0, 2}, {"k1", 0, 2}, {"c2", 2, 1}, {"k2", 2, 3}, {"b1", 3, 1}}},
                 "abcd"});
    f.push_back({6, true,
                 {{{"c1", 0, 2}, {"k1", 2, 1}, {"c2", 0, 3}, {"k2", 0, 3}, {"b1", 3, 1}}},
                 {{{"c1", 0, 2}, {"k1", 0, 2}, {"c2", 2, 3}, {"k2", 3, 1}, {"b1", 2, 1}}},
                 "abcd"});
    f.push_back({7, false, bridge_table({"c1", "k1", "c2", "b1", "k2"}),
                 bridge_table({"c1", "c2", "k1", "b1", "k2"}), "abcd"});
    f.push_back({8, false, bridge_table({"c1", "b1", "k1", "c2", "k2"}),
                 bridge_table({"c1", "k1", "b1", "c2", "k2"}), "ab"});
    f.push_back({9, false, bridge_table({"c1", "k2", "k1", "c2", "b1"}),
                 bridge_table({"c1", "k1", "k2", "c2", "b1"}), "ab"});
    f.push_back({10, false, bridge_table({"c1", "k2", "k1", "b1", "c2"}),
                 bridge_table({"c1", "k1", "k2", "b1", "c2"}), "ab"});
    f.push_back({11, false, bridge_table({"k1", "b2", "b1", "k2", "c1"}),
                 bridge_table({"k1", "b1", "b2", "k2", "c1"}), "a"});
    return f;
  }();
  return fams;
}

std::string rename_slot(const std::string& name) {
  if (name[0] == 'k') return "b" + name.substr(1);
  if (name[0] == 'b') return "k" + name.substr(1);
  return name;
}

ElementKind kind_from_name(const std::string& name) {
  switch (name[0]) {
    case 'c': return ElementKind::damper;
    case 'k': return ElementKind::spring;
    case 'b': return ElementKind::inerter;
  }
  throw std::logic_error("catalog: bad slot name");
}

// Members per quartet: a keeps the base graph and labels; b realizes the
// dual on the dual graph with spring/inerter slots renamed; c inverts
// frequency on the base graph (renamed slots); d combines both on the dual
// graph with plain labels.
ConfigTemplate make_template(ConfigId id, const Family& fam, char member) {
  const bool use_dual_graph = (member == 'b' || member == 'd');
  const bool rename = (member == 'b' || member == 'c');
  const Table& table = use_dual_graph ? fam.dual : fam.base;
  ConfigTemplate t;
  t.id = id;
  t.is_series_parallel = fam.series_parallel;
  for (const auto& def : table) {
    std::string name = def.name;
    if (rename) name = rename_slot(name);
    t.slots.push_back(Slot{name, kind_from_name(name), def.i, def.j});
  }
  return t;
}

struct CatalogData {
  std::map<ConfigId, ConfigTemplate> templates;
  std::map<ConfigId, std::pair<int, char>> meta;  // family number, member
  std::map<std::string, ConfigId> by_name;
  std::vector<ConfigId> ids;
};

std::string make_name(int family, char member, const std::string& members) {
  std::string name = "N" + std::to_string(family);
  if (members.size() > 1) name += member;
  return name;
}

const CatalogData& catalog_data() {
  static const CatalogData data = [] {
    CatalogData d;
    int next = 0;
    for (const auto& fam : families()) {
      for (char member : fam.members) {
        const auto id = static_cast<ConfigId>(next++);
        d.templates.emplace(id, make_template(id, fam, member));
        d.meta.emplace(id, std::make_pair(fam.number, member));
        d.by_name.emplace(make_name(fam.number, member, fam.members), id);
        d.ids.push_back(id);
      }
    }
    return d;
  }();
  return data;
}

}  // namespace

const char* config_name(ConfigId id) {
  for (const auto& [name, cid] : catalog_data().by_name)
    if (cid == id) return name.c_str();
  throw std::invalid_argument("unknown config id");
}

ConfigId config_from_name(const std::string& name) {
  const auto& m = catalog_data().by_name;
  const auto it = m.find(name);
  if (it == m.end()) throw std::invalid_argument("unknown config: " + name);
  return it->second;
}

int config_family(ConfigId id) { return catalog_data().meta.at(id).first; }

char config_member(ConfigId id) { return catalog_data().meta.at(id).second; }

const std::vector<ConfigId>& all_config_ids() { return catalog_data().ids; }

const ConfigTemplate& catalog(ConfigId id) {
  const auto& m = catalog_data().templates;
  const auto it = m.find(id);
  if (it == m.end()) throw std::invalid_argument("unknown config id");
  return it->second;
}

}  // namespace netsyn
