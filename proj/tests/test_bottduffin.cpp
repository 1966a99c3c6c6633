#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netsyn/bottduffin.hpp"
#include "netsyn/boundary.hpp"
#include "netsyn/network.hpp"
#include "netsyn/pr.hpp"
#include "netsyn/synth.hpp"

using namespace netsyn;

namespace {

// Stiff quarter-car controller tuple; the trailing two denominator entries
// follow from the others so the borderline products cancel exactly. Its
// denominator pair sits 5e-10 (relative) off the imaginary axis: interior,
// but only just.
RatFun fixture_quartercar_stiff() {
  const double a3 = 5.994e-4, a2 = 0.07188, a1 = 1.529, a0 = 14.818;
  const double d3 = 1.0, d2 = 5.005e-8;
  return RatFun(Poly({a0, a1, a2, a3}), Poly({a0 * d2 / a2, a1 * d3 / a3, d2, d3}));
}

RatFun fixture_quartercar_soft() {
  return RatFun(Poly({2.232e5, 2.398e4, 4.239e3, 279.553}),
                Poly({798.595, 141.471, 9.3105, 1.0}));
}

// Stiff-setting biquadratic optimum; realizable with nine elements.
RatFun fixture_biquadratic_stiff() {
  return RatFun(Poly({1.34e4, 226.559, 1.0}), Poly({1.684e7, 7.6e4, 5.083e3}));
}

int damper_count(const Netlist& n) {
  int k = 0;
  for (const auto& e : n.elements) k += e.kind == ElementKind::damper;
  return k;
}

bool all_positive(const Netlist& n) {
  for (const auto& e : n.elements)
    if (!(e.value > 0.0) || !std::isfinite(e.value)) return false;
  return true;
}

std::string describe(const Netlist& n) {
  std::vector<Element> es = n.elements;
  std::stable_sort(es.begin(), es.end(), [](const Element& x, const Element& y) {
    return x.kind != y.kind ? x.kind < y.kind : x.value < y.value;
  });
  std::ostringstream os;
  for (const auto& e : es) os << element_kind_name(e.kind)[0] << "=" << e.value << " ";
  return os.str();
}

// Folds a linear extraction chain back around its final remainder.
RatFun compose_chain(const std::vector<SynthesisStep>& steps, const RatFun& tail) {
  RatFun z = tail;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    const RatFun frag = impedance_of(it->extracted);
    z = it->kind == StepKind::jr_pole_removal
            ? ratfun_add(frag, z)
            : ratfun_inv(ratfun_add(ratfun_inv(frag), ratfun_inv(z)));
  }
  return z;
}

double log_draw(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(std::log(1e-2), std::log(1e2));
  return std::exp(u(rng));
}

Netlist chain3(double k, double c, double b) {
  Netlist n;
  n.elements.push_back({ElementKind::spring, k, 0, 2});
  n.elements.push_back({ElementKind::damper, c, 2, 3});
  n.elements.push_back({ElementKind::inerter, b, 3, 1});
  return n;
}

Netlist shunt3(double k, double c, double b) {
  Netlist n;
  n.elements.push_back({ElementKind::spring, k, 0, 1});
  n.elements.push_back({ElementKind::damper, c, 0, 1});
  n.elements.push_back({ElementKind::inerter, b, 0, 1});
  return n;
}

}  // namespace

TEST_SUITE("bottduffin") {
  TEST_CASE("infinity extractions peel down to a constant") {
    SUBCASE("pole at infinity") {
      // s + 1/(s+1)
      const FosterResult fr =
          foster_extract(RatFun(Poly({1.0, 1.0, 1.0}), Poly({1.0, 1.0})));
      REQUIRE(fr.steps.size() == 1);
      CHECK(fr.steps[0].kind == StepKind::jr_pole_removal);
      REQUIRE(fr.steps[0].extracted.elements.size() == 1);
      CHECK(fr.steps[0].extracted.elements[0].kind == ElementKind::spring);
      CHECK(fr.steps[0].extracted.elements[0].value == doctest::Approx(1.0));
      CHECK(ratfun_close(fr.remainder, RatFun(Poly({1.0}), Poly({1.0, 1.0})), 1e-12));
    }
    SUBCASE("zero at infinity, then pole at infinity") {
      const FosterResult fr =
          foster_extract(RatFun(Poly({1.0, 1.0}), Poly({1.0, 1.0, 1.0})));
      REQUIRE(fr.steps.size() == 2);
      CHECK(fr.steps[0].kind == StepKind::jr_zero_removal);
      CHECK(fr.steps[0].extracted.elements[0].kind == ElementKind::inerter);
      CHECK(fr.steps[0].extracted.elements[0].value == doctest::Approx(1.0));
      CHECK(fr.steps[1].kind == StepKind::jr_pole_removal);
      CHECK(ratfun_close(fr.remainder, RatFun(Poly({1.0}), Poly({1.0})), 1e-12));
      CHECK(ratfun_close(compose_chain(fr.steps, fr.remainder),
                         RatFun(Poly({1.0, 1.0}), Poly({1.0, 1.0, 1.0})), 1e-9));
    }
  }

  TEST_CASE("resonant pairs drop the degree by two") {
    SUBCASE("pole pair") {
      // 2s/(s^2+4) + 1
      const RatFun r(Poly({4.0, 2.0, 1.0}), Poly({4.0, 0.0, 1.0}));
      const FosterResult fr = foster_extract(r);
      REQUIRE(fr.steps.size() == 1);
      CHECK(fr.steps[0].kind == StepKind::jr_pole_removal);
      REQUIRE(fr.steps[0].extracted.elements.size() == 2);
      CHECK(fr.steps[0].extracted.storage_count() == 2);
      CHECK(ratfun_close(fr.remainder, RatFun(Poly({1.0}), Poly({1.0})), 1e-9));
      CHECK(ratfun_close(compose_chain(fr.steps, fr.remainder), r, 1e-9));
    }
    SUBCASE("zero pair") {
      const RatFun r(Poly({4.0, 0.0, 1.0}), Poly({4.0, 2.0, 1.0}));
      const FosterResult fr = foster_extract(r);
      REQUIRE(fr.steps.size() == 1);
      CHECK(fr.steps[0].kind == StepKind::jr_zero_removal);
      REQUIRE(fr.steps[0].extracted.elements.size() == 2);
      CHECK(fr.steps[0].extracted.elements[0].value == doctest::Approx(2.0));
      CHECK(fr.steps[0].extracted.elements[1].value == doctest::Approx(0.5));
      CHECK(ratfun_close(fr.remainder, RatFun(Poly({1.0}), Poly({1.0})), 1e-9));
      CHECK(ratfun_close(compose_chain(fr.steps, fr.remainder), r, 1e-9));
    }
    SUBCASE("origin pair") {
      // 1/s + 1/(s+1), then s + 1/(s+1)
      const FosterResult fp =
          foster_extract(RatFun(Poly({1.0, 1.0, 1.0}), Poly({0.0, 1.0, 1.0})));
      REQUIRE(fp.steps.size() == 1);
      CHECK(fp.steps[0].extracted.elements[0].kind == ElementKind::inerter);
      CHECK(ratfun_close(fp.remainder, RatFun(Poly({1.0}), Poly({1.0, 1.0})), 1e-9));
    }
  }

  TEST_CASE("minimum-reactive functions are fixed points") {
    for (const RatFun& r : {fixture_quartercar_stiff(), fixture_quartercar_soft(),
                            RatFun(Poly({1.0, 1.0, 1.0}), Poly({1.0, 2.0, 1.0}))}) {
      const FosterResult fr = foster_extract(r);
      CHECK(fr.steps.empty());
      CHECK(ratfun_close(fr.remainder, r, 1e-12));
    }
  }

  TEST_CASE("first-order degenerate denominators avoid zero-valued elements") {
    SUBCASE("pure storage pole") {
      // 5/(2s)
      const Netlist n = realize_first_order(RatFun(Poly({5.0}), Poly({0.0, 2.0})));
      REQUIRE(n.elements.size() == 1);
      CHECK(n.elements[0].kind == ElementKind::inerter);
      CHECK(n.elements[0].value == doctest::Approx(0.4));
    }
    SUBCASE("constant plus storage pole") {
      // (3s+5)/(2s)
      const Netlist n =
          realize_first_order(RatFun(Poly({5.0, 3.0}), Poly({0.0, 2.0})));
      REQUIRE(n.elements.size() == 2);
      CHECK(all_positive(n));
      CHECK(ratfun_close(impedance_of(n), RatFun(Poly({5.0, 3.0}), Poly({0.0, 2.0})),
                         1e-9));
    }
  }

  TEST_CASE("cycle on the classic minimum biquadratic") {
    // Re r(j*omega) = (omega^2-2)^2 / |den|^2: interior minimum of zero at
    // sqrt(2), where r = j/sqrt(2); the transform parameter comes out at one.
    const RatFun r(Poly({1.0, 1.0, 1.0}), Poly({4.0, 1.0, 1.0}));
    const RichardsResult rc = richards_cycle(r);
    CHECK(rc.cycled);
    CHECK(rc.shift.elements.empty());
    CHECK(std::abs(rc.R) <= 1e-9);
    CHECK(rc.omega0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-6));
    CHECK(rc.X == doctest::Approx(std::sqrt(0.5)).epsilon(1e-5));
    CHECK(rc.k == doctest::Approx(1.0).epsilon(1e-5));

    REQUIRE(rc.branch[0].reactance.elements.size() == 1);
    CHECK(rc.branch[0].reactance.elements[0].kind == ElementKind::spring);
    CHECK(rc.branch[0].reactance.elements[0].value == doctest::Approx(2.0));
    CHECK_FALSE(rc.branch[0].resonant_series);
    CHECK(rc.branch[0].resonant.elements[0].value == doctest::Approx(6.0));
    CHECK(rc.branch[0].resonant.elements[1].value == doctest::Approx(3.0));
    REQUIRE(rc.branch[0].remainder.den.degree() == 0);
    CHECK(rc.branch[0].remainder.num.degree() <= 0);
    CHECK(rc.branch[0].remainder.eval(cplx(0.0, 0.0)).real() ==
          doctest::Approx(0.25));

    REQUIRE(rc.branch[1].reactance.elements.size() == 1);
    CHECK(rc.branch[1].reactance.elements[0].kind == ElementKind::inerter);
    CHECK(rc.branch[1].reactance.elements[0].value == doctest::Approx(2.0));
    CHECK(rc.branch[1].resonant_series);
    CHECK(rc.branch[1].resonant.elements[0].value == doctest::Approx(4.0 / 3.0));
    CHECK(rc.branch[1].resonant.elements[1].value == doctest::Approx(2.0 / 3.0));
    CHECK(rc.branch[1].remainder.eval(cplx(0.0, 0.0)).real() ==
          doctest::Approx(1.0));

    const Netlist net = bott_duffin(r);
    CHECK(net.elements.size() == 8);
    CHECK(damper_count(net) == 2);
    CHECK(net.storage_count() == 6);
    CHECK(ratfun_close(impedance_of(net), r, 1e-9));
  }

  TEST_CASE("stiff quarter-car tuple realizes within the thirteen bound") {
    const RatFun r = fixture_quartercar_stiff();
    std::vector<SynthesisStep> trace;
    const Netlist net = bott_duffin(r, {}, &trace);
    CHECK(net.elements.size() <= 13);
    CHECK(net.elements.size() >= 9);
    CHECK(all_positive(net));
    CHECK(ratfun_close(impedance_of(net), r, 1e-6));
    CHECK(!trace.empty());
    MESSAGE("stiff tuple: ", net.elements.size(), " elements, ", describe(net));
    MESSAGE("reference twelve-element tree: c=6.956e-7 1.667e3 1.668e3 3.999e12, "
            "k=5.41e8 3.859e4 1.838e5 1.617e4, b=5.141e-3 15.13 72.066 172.028");
  }

  TEST_CASE("stiff biquadratic stays within nine elements") {
    const RatFun r = fixture_biquadratic_stiff();
    const Netlist net = bott_duffin(r);
    CHECK(net.elements.size() <= 9);
    CHECK(all_positive(net));
    CHECK(ratfun_close(impedance_of(net), r, 1e-6));
    MESSAGE("biquadratic: ", net.elements.size(), " elements, ", describe(net));
    MESSAGE("reference nine-element tree: c=5.476e11 1.257e3 5.083e3, "
            "k=5.664e5 6.564e4 6.487e5, b=11.28 9.85 97.341");
  }

  TEST_CASE("soft quarter-car tuple realizes within the thirteen bound") {
    const RatFun r = fixture_quartercar_soft();
    const Netlist net = bott_duffin(r);
    CHECK(net.elements.size() <= 13);
    CHECK(all_positive(net));
    CHECK(ratfun_close(impedance_of(net), r, 1e-6));
    MESSAGE("soft tuple: ", net.elements.size(), " elements, ", describe(net));
  }

  TEST_CASE("constants and first-order inputs stay minimal") {
    SUBCASE("constant") {
      const Netlist net = bott_duffin(RatFun(Poly({3.0}), Poly({1.0})));
      REQUIRE(net.elements.size() == 1);
      CHECK(net.elements[0].kind == ElementKind::damper);
      CHECK(net.elements[0].value == doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("minimum-reactive first order never cycles") {
      const RatFun r(Poly({3.0, 2.0}), Poly({2.0, 1.0}));
      std::vector<SynthesisStep> trace;
      const Netlist net = bott_duffin(r, {}, &trace);
      CHECK(net.elements.size() <= 3);
      CHECK(trace.empty());
      CHECK(ratfun_close(impedance_of(net), r, 1e-9));
    }
    SUBCASE("first order with a storage pole") {
      const RatFun r(Poly({1.0, 1.0}), Poly({0.0, 1.0}));
      std::vector<SynthesisStep> trace;
      const Netlist net = bott_duffin(r, {}, &trace);
      CHECK(net.elements.size() == 2);
      REQUIRE(trace.size() == 1);
      CHECK(trace[0].kind == StepKind::jr_pole_removal);
      CHECK(ratfun_close(impedance_of(net), r, 1e-9));
    }
    SUBCASE("pure reactances collapse to one element") {
      const Netlist spring = bott_duffin(RatFun(Poly({0.0, 1.0}), Poly({1.0})));
      REQUIRE(spring.elements.size() == 1);
      CHECK(spring.elements[0].kind == ElementKind::spring);
      const Netlist inerter = bott_duffin(RatFun(Poly({1.0}), Poly({0.0, 1.0})));
      REQUIRE(inerter.elements.size() == 1);
      CHECK(inerter.elements[0].kind == ElementKind::inerter);
    }
  }

  TEST_CASE("random passive impedances round-trip through the procedure") {
    std::mt19937 rng(915);
    const auto& ids = all_config_ids();
    std::uniform_int_distribution<size_t> pick(0, ids.size() - 1);
    std::uniform_int_distribution<int> shape(0, 3);
    int total = 0;
    for (int trial = 0; trial < 150; ++trial) {
      Netlist gen;
      switch (shape(rng)) {
        case 0:
          gen = chain3(log_draw(rng), log_draw(rng), log_draw(rng));
          break;
        case 1:
          gen = shunt3(log_draw(rng), log_draw(rng), log_draw(rng));
          break;
        default: {
          const ConfigTemplate& t = catalog(ids[pick(rng)]);
          std::vector<double> values;
          for (size_t i = 0; i < t.slots.size(); ++i) values.push_back(log_draw(rng));
          gen = instantiate(t, values);
        }
      }
      const RatFun r = impedance_of(gen);
      CAPTURE(trial);
      Netlist net;
      REQUIRE_NOTHROW(net = bott_duffin(r));
      CHECK(net.elements.size() <= 13);
      CHECK(all_positive(net));
      total += static_cast<int>(net.elements.size());
    }
    MESSAGE("mean element count over 150 draws: ", total / 150.0);
  }

  TEST_CASE("functions with negative real part are rejected") {
    CHECK_THROWS_AS(bott_duffin(RatFun(Poly({-1.0, 1.0}), Poly({1.0, 1.0}))),
                    std::domain_error);
    CHECK_THROWS_AS(bott_duffin(RatFun(Poly({1.0, -1.0, 1.0}), Poly({1.0, 1.0, 1.0}))),
                    std::domain_error);
  }
}
