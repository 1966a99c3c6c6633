#pragma once

#include <string>
#include <vector>

#include "netsyn/poly.hpp"

namespace netsyn {

enum class ElementKind { damper, spring, inerter };

const char* element_kind_name(ElementKind k);

// Mechanical two-terminal element. Impedance convention (velocity/force):
// damper 1/c, spring s/k, inerter 1/(b*s).
struct Element {
  ElementKind kind;
  double value;
  int i, j;  // node ids; distinct
};

// Two-terminal network; terminals are always nodes 0 and 1.
struct Netlist {
  std::vector<Element> elements;

  int node_count() const;
  int storage_count() const;  // springs + inerters
};

RatFun element_impedance(const Element& e);

// Driving-point impedance across the terminals, reduced and normalized.
// Series-parallel graphs reduce recursively; anything else goes through
// polynomial nodal analysis. Throws on disconnected terminals.
RatFun impedance_of(const Netlist& n, double tau_gcd = 1e-7);

enum class TransformKind { dual, inv, gdu };

// inv: same graph, spring<->inerter kinds, values kept (Z(s) -> Z(1/s)).
// dual: dual graph, kinds swapped, values inverted (Z -> 1/Z).
// gdu: dual graph, kinds kept, values inverted (Z(s) -> 1/Z(1/s)).
// Dual graphs exist here for series-parallel nets and the 4-node bridge;
// anything else throws std::invalid_argument.
Netlist transform(const Netlist& n, TransformKind t);

enum class ConfigId {
  N1a, N1b,
  N2a, N2b, N2c, N2d,
  N3a, N3b, N3c, N3d,
  N4a, N4b, N4c, N4d,
  N5a, N5b, N5c, N5d,
  N6a, N6b, N6c, N6d,
  N7a, N7b, N7c, N7d,
  N8a, N8b,
  N9a, N9b,
  N10a, N10b,
  N11,
};

const char* config_name(ConfigId id);
ConfigId config_from_name(const std::string& name);  // throws on unknown
int config_family(ConfigId id);                      // 1..11
char config_member(ConfigId id);                     // 'a'..'d'
const std::vector<ConfigId>& all_config_ids();

struct Slot {
  std::string name;  // c1, c2, k1, k2, b1, b2 (post-rename for dual members)
  ElementKind kind;
  int i, j;
};

struct ConfigTemplate {
  ConfigId id;
  std::vector<Slot> slots;
  bool is_series_parallel;
};

const ConfigTemplate& catalog(ConfigId id);

// Builds a netlist by assigning values to slots in template order.
Netlist instantiate(const ConfigTemplate& t, const std::vector<double>& values);

// Structural necessary conditions for realizing an interior bicubic:
// no all-spring/all-inerter terminal path or terminal cut, no damper-free
// top-level series segment or parallel branch, at least five elements and
// three storage elements. Returns violation tags; empty means clean.
std::vector<std::string> structural_guards(const Netlist& n);

}  // namespace netsyn
