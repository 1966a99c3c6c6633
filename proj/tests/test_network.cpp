#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <doctest.h>

#include "netsyn/network.hpp"
#include "netsyn/poly.hpp"
#include "netsyn/pr.hpp"

namespace {

using namespace netsyn;

RatFun rat_desc(const std::array<double, 4>& num_desc, const std::array<double, 4>& den_desc) {
  Poly n, d;
  n.c.assign(num_desc.rbegin(), num_desc.rend());
  d.c.assign(den_desc.rbegin(), den_desc.rend());
  return RatFun(std::move(n), std::move(d));
}

std::vector<double> values_for(const ConfigTemplate& t, const std::map<std::string, double>& by_name) {
  std::vector<double> v;
  for (const auto& s : t.slots) v.push_back(by_name.at(s.name));
  return v;
}

// Coefficientwise comparison after normalizing both sides the same way.
bool coeffwise_close(const RatFun& x, const RatFun& y, double rtol) {
  const RatFun xn = ratfun_normalize(x);
  const RatFun yn = ratfun_normalize(y);
  auto close = [rtol](const Poly& p, const Poly& q) {
    const size_t m = std::max(p.c.size(), q.c.size());
    const double scale = std::max(p.max_abs(), q.max_abs());
    for (size_t k = 0; k < m; ++k) {
      const double a = k < p.c.size() ? p.c[k] : 0.0;
      const double b = k < q.c.size() ? q.c[k] : 0.0;
      if (std::abs(a - b) > rtol * scale) return false;
    }
    return true;
  };
  return close(xn.num, yn.num) && close(xn.den, yn.den);
}

// Z(1/s): pad numerator and denominator to a common length and reverse.
RatFun frequency_inverted(const RatFun& z) {
  const size_t m = std::max(z.num.c.size(), z.den.c.size());
  Poly n = z.num, d = z.den;
  n.c.resize(m, 0.0);
  d.c.resize(m, 0.0);
  std::reverse(n.c.begin(), n.c.end());
  std::reverse(d.c.begin(), d.c.end());
  return ratfun_normalize(ratfun_reduce(RatFun(std::move(n), std::move(d))));
}

std::vector<double> random_values(std::mt19937& rng, size_t count) {
  std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
  std::vector<double> v;
  for (size_t k = 0; k < count; ++k) v.push_back(std::exp(u(rng)));
  return v;
}

using KindEdge = std::tuple<ElementKind, int, int>;

std::multiset<KindEdge> kind_edge_signature(const Netlist& n, const std::array<int, 4>& relabel) {
  std::multiset<KindEdge> sig;
  for (const auto& e : n.elements) {
    int i = relabel[static_cast<size_t>(e.i)];
    int j = relabel[static_cast<size_t>(e.j)];
    if (i > j) std::swap(i, j);
    sig.insert({e.kind, i, j});
  }
  return sig;
}

bool terminal_graph_isomorphic(const Netlist& a, const Netlist& b) {
  const std::array<std::array<int, 4>, 4> relabels{{{0, 1, 2, 3}, {1, 0, 2, 3}, {0, 1, 3, 2}, {1, 0, 3, 2}}};
  const auto target = kind_edge_signature(b, relabels[0]);
  for (const auto& r : relabels)
    if (kind_edge_signature(a, r) == target) return true;
  return false;
}

Netlist fig1b_netlist() {
  return instantiate(catalog(ConfigId::N1b),
                     values_for(catalog(ConfigId::N1b), {{"c1", 1.668e3},
                                                         {"c2", 6.96e-7},
                                                         {"b1", 172.097},
                                                         {"b2", 15.131},
                                                         {"k1", 3.858e4}}));
}

RatFun quartercar_stiff_impedance() {
  const double a3 = 5.994e-4, a2 = 0.07188, a1 = 1.529, a0 = 14.818;
  const double d3 = 1.0, d2 = 5.005e-8;
  const double d1 = a1 * d3 / a3, d0 = a0 * d2 / a2;
  return rat_desc({a3, a2, a1, a0}, {d3, d2, d1, d0});
}

}  // namespace

TEST_SUITE("network") {
  TEST_CASE("element impedances follow the mechanical convention") {
    CHECK(ratfun_close(element_impedance({ElementKind::damper, 2.0, 0, 1}),
                       RatFun(Poly({1.0}), Poly({2.0})), 1e-15));
    CHECK(ratfun_close(element_impedance({ElementKind::spring, 4.0, 0, 1}),
                       RatFun(Poly({0.0, 1.0}), Poly({4.0})), 1e-15));
    CHECK(ratfun_close(element_impedance({ElementKind::inerter, 3.0, 0, 1}),
                       RatFun(Poly({1.0}), Poly({0.0, 3.0})), 1e-15));
    CHECK_THROWS_AS(element_impedance({ElementKind::damper, -1.0, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(element_impedance({ElementKind::damper, 1.0, 2, 2}), std::invalid_argument);
  }

  TEST_CASE("single damper reduces to a constant") {
    Netlist n;
    n.elements.push_back({ElementKind::damper, 5.0, 0, 1});
    CHECK(ratfun_close(impedance_of(n), RatFun(Poly({1.0}), Poly({5.0})), 1e-15));
  }

  TEST_CASE("disconnected terminals are rejected") {
    Netlist n;
    n.elements.push_back({ElementKind::damper, 5.0, 0, 2});
    CHECK_THROWS_AS(impedance_of(n), std::invalid_argument);
  }

  TEST_CASE("bridge fixture reproduces the published cubic") {
    const auto& t = catalog(ConfigId::N11);
    const Netlist n = instantiate(
        t, values_for(t, {{"k1", 1.0 / 16}, {"k2", 1.0}, {"b1", 1.0}, {"b2", 1.0}, {"c1", 0.5}}));
    const RatFun expected = rat_desc({16.0, 8.0, 13.0, 2.0}, {8.0, 13.0, 2.0, 1.0});
    CHECK(ratfun_close(impedance_of(n), expected, 1e-12));
  }

  TEST_CASE("published five-element controller matches its impedance within 1e-3") {
    CHECK(coeffwise_close(impedance_of(fig1b_netlist()), quartercar_stiff_impedance(), 1e-3));
  }

  TEST_CASE("degenerate bridge collapses to a biquad") {
    Netlist n;
    n.elements.push_back({ElementKind::damper, 0.5, 0, 2});
    n.elements.push_back({ElementKind::spring, 1.0, 0, 3});
    n.elements.push_back({ElementKind::spring, 3.0 / 16, 2, 1});
    n.elements.push_back({ElementKind::inerter, 3.0, 3, 1});
    n.elements.push_back({ElementKind::inerter, 1.0, 2, 3});
    const RatFun z = impedance_of(n);
    CHECK(ratfun_close(z, RatFun(Poly({6.0, 4.0, 24.0}), Poly({3.0, 18.0, 12.0})), 1e-9));
    CHECK(mcmillan_degree(z) == 2);
    CHECK(n.storage_count() == 4);
  }

  TEST_CASE("catalog counts and template shapes") {
    const auto& ids = all_config_ids();
    CHECK(ids.size() == 33);
    int sp = 0, bridge = 0;
    for (auto id : ids) {
      const auto& t = catalog(id);
      CHECK(t.slots.size() == 5);
      (t.is_series_parallel ? sp : bridge) += 1;
      CHECK(config_from_name(config_name(id)) == id);
      const int fam = config_family(id);
      CHECK(fam >= 1);
      CHECK(fam <= 11);
    }
    CHECK(sp == 22);
    CHECK(bridge == 11);
    CHECK_THROWS_AS(config_from_name("N12a"), std::invalid_argument);

    auto slot_names = [](ConfigId id) {
      std::set<std::string> names;
      for (const auto& s : catalog(id).slots) names.insert(s.name);
      return names;
    };
    CHECK(slot_names(ConfigId::N1a) == std::set<std::string>{"c1", "c2", "k1", "k2", "b1"});
    CHECK(catalog(ConfigId::N1a).is_series_parallel);
    CHECK(slot_names(ConfigId::N11) == std::set<std::string>{"c1", "k1", "k2", "b1", "b2"});
    CHECK_FALSE(catalog(ConfigId::N11).is_series_parallel);
    CHECK(slot_names(ConfigId::N1b) == std::set<std::string>{"c1", "c2", "b1", "b2", "k1"});
  }

  TEST_CASE("slot kinds always match their name prefix") {
    for (auto id : all_config_ids()) {
      for (const auto& s : catalog(id).slots) {
        const ElementKind want = s.name[0] == 'c'   ? ElementKind::damper
                                 : s.name[0] == 'k' ? ElementKind::spring
                                                    : ElementKind::inerter;
        CHECK(s.kind == want);
      }
    }
  }

  TEST_CASE("impedance is invariant under relabeling and reordering") {
    std::mt19937 rng(7001);
    const auto& t = catalog(ConfigId::N5a);
    const Netlist n = instantiate(t, random_values(rng, 5));
    const RatFun z = impedance_of(n);

    Netlist relabeled = n;
    for (auto& e : relabeled.elements) {
      auto map = [](int v) { return v == 2 ? 9 : v == 3 ? 2 : v; };
      e.i = map(e.i);
      e.j = map(e.j);
    }
    std::reverse(relabeled.elements.begin(), relabeled.elements.end());
    CHECK(ratfun_close(impedance_of(relabeled), z, 1e-12));
  }

  TEST_CASE("transform value maps verified against the impedance oracle") {
    std::mt19937 rng(7002);
    for (auto id : all_config_ids()) {
      const auto& t = catalog(id);
      for (int trial = 0; trial < 3; ++trial) {
        const Netlist n = instantiate(t, random_values(rng, t.slots.size()));
        const RatFun z = impedance_of(n);
        // Near pole-zero pairs (one element dominating) make coefficient
        // forms ill-conditioned; agreement holds at verification tolerance.
        CHECK(ratfun_close(impedance_of(transform(n, TransformKind::dual)), ratfun_inv(z), kTauVerify));
        CHECK(ratfun_close(impedance_of(transform(n, TransformKind::inv)), frequency_inverted(z),
                           kTauVerify));
        CHECK(ratfun_close(impedance_of(transform(n, TransformKind::gdu)),
                           ratfun_inv(frequency_inverted(z)), kTauVerify));
      }
    }
  }

  TEST_CASE("dual is an involution on kinds and values") {
    std::mt19937 rng(7003);
    for (auto id : {ConfigId::N1a, ConfigId::N6c, ConfigId::N9a, ConfigId::N11}) {
      const auto& t = catalog(id);
      const Netlist n = instantiate(t, random_values(rng, t.slots.size()));
      const Netlist dd = transform(transform(n, TransformKind::dual), TransformKind::dual);
      auto signature = [](const Netlist& net) {
        std::vector<std::pair<int, double>> sig;
        for (const auto& e : net.elements) sig.push_back({static_cast<int>(e.kind), e.value});
        std::sort(sig.begin(), sig.end());
        return sig;
      };
      const auto got = signature(dd), want = signature(n);
      REQUIRE(got.size() == want.size());
      for (size_t k = 0; k < got.size(); ++k) {
        CHECK(got[k].first == want[k].first);
        CHECK(got[k].second == doctest::Approx(want[k].second).epsilon(1e-14));
      }
      CHECK(ratfun_close(impedance_of(dd), impedance_of(n), 1e-9));
    }
  }

  TEST_CASE("bridge self-duality under the generalized dual") {
    std::mt19937 rng(7004);
    const auto& t = catalog(ConfigId::N8a);
    const Netlist n = instantiate(t, random_values(rng, 5));
    const Netlist g = transform(n, TransformKind::gdu);
    CHECK(terminal_graph_isomorphic(g, n));
  }

  TEST_CASE("dual of an unsupported topology throws") {
    Netlist k4;
    k4.elements.push_back({ElementKind::damper, 1.0, 0, 1});
    k4.elements.push_back({ElementKind::damper, 1.0, 0, 2});
    k4.elements.push_back({ElementKind::spring, 1.0, 0, 3});
    k4.elements.push_back({ElementKind::spring, 1.0, 1, 2});
    k4.elements.push_back({ElementKind::inerter, 1.0, 1, 3});
    k4.elements.push_back({ElementKind::inerter, 1.0, 2, 3});
    CHECK_THROWS_AS(transform(k4, TransformKind::dual), std::invalid_argument);
    CHECK_NOTHROW(impedance_of(k4));
  }

  TEST_CASE("instantiate validates slot values") {
    const auto& t = catalog(ConfigId::N2a);
    CHECK_THROWS_AS(instantiate(t, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(instantiate(t, {1.0, 2.0, 3.0, -4.0, 5.0}), std::invalid_argument);
  }

  TEST_CASE("catalog templates pass the structural guards") {
    std::mt19937 rng(7005);
    for (auto id : all_config_ids()) {
      const auto& t = catalog(id);
      const Netlist n = instantiate(t, random_values(rng, t.slots.size()));
      CHECK(structural_guards(n).empty());
    }
  }

  TEST_CASE("structural guards flag constructed violations") {
    auto has = [](const std::vector<std::string>& tags, const std::string& want) {
      return std::find(tags.begin(), tags.end(), want) != tags.end();
    };

    Netlist kpath;
    kpath.elements.push_back({ElementKind::spring, 1.0, 0, 2});
    kpath.elements.push_back({ElementKind::spring, 1.0, 2, 1});
    kpath.elements.push_back({ElementKind::damper, 1.0, 0, 1});
    kpath.elements.push_back({ElementKind::inerter, 1.0, 0, 1});
    kpath.elements.push_back({ElementKind::spring, 1.0, 0, 1});
    CHECK(has(structural_guards(kpath), "k-path"));

    Netlist bpath;
    bpath.elements.push_back({ElementKind::inerter, 1.0, 0, 2});
    bpath.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    bpath.elements.push_back({ElementKind::damper, 1.0, 0, 1});
    bpath.elements.push_back({ElementKind::spring, 1.0, 0, 1});
    bpath.elements.push_back({ElementKind::spring, 1.0, 0, 2});
    CHECK(has(structural_guards(bpath), "b-path"));

    Netlist four;
    four.elements.push_back({ElementKind::damper, 1.0, 0, 2});
    four.elements.push_back({ElementKind::spring, 1.0, 2, 1});
    four.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    four.elements.push_back({ElementKind::spring, 1.0, 0, 2});
    CHECK(has(structural_guards(four), "element count"));

    Netlist lossless_series;
    lossless_series.elements.push_back({ElementKind::spring, 1.0, 0, 2});
    lossless_series.elements.push_back({ElementKind::damper, 1.0, 2, 1});
    lossless_series.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    lossless_series.elements.push_back({ElementKind::spring, 1.0, 2, 1});
    lossless_series.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    CHECK(has(structural_guards(lossless_series), "lossless-series"));
    CHECK(has(structural_guards(lossless_series), "k-cutset"));

    Netlist lossless_parallel;
    lossless_parallel.elements.push_back({ElementKind::damper, 1.0, 0, 1});
    lossless_parallel.elements.push_back({ElementKind::spring, 1.0, 0, 2});
    lossless_parallel.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    lossless_parallel.elements.push_back({ElementKind::damper, 1.0, 0, 3});
    lossless_parallel.elements.push_back({ElementKind::spring, 1.0, 3, 1});
    CHECK(has(structural_guards(lossless_parallel), "lossless-parallel"));

    Netlist bcut;
    bcut.elements.push_back({ElementKind::inerter, 1.0, 0, 2});
    bcut.elements.push_back({ElementKind::damper, 1.0, 2, 1});
    bcut.elements.push_back({ElementKind::spring, 1.0, 2, 1});
    bcut.elements.push_back({ElementKind::inerter, 1.0, 2, 1});
    bcut.elements.push_back({ElementKind::damper, 2.0, 2, 1});
    CHECK(has(structural_guards(bcut), "b-cutset"));
  }

  TEST_CASE("mcmillan degree never exceeds the storage count") {
    std::mt19937 rng(7006);
    for (auto id : all_config_ids()) {
      const auto& t = catalog(id);
      const Netlist n = instantiate(t, random_values(rng, t.slots.size()));
      for (int trial = 0; trial < 8; ++trial) {
        const Netlist m = instantiate(t, random_values(rng, t.slots.size()));
        CHECK(mcmillan_degree(impedance_of(m)) <= m.storage_count());
      }
      CHECK(mcmillan_degree(impedance_of(n)) <= n.storage_count());
    }
  }
}
