#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "gpttomo/rng.hpp"
#include "gpttomo/theories.hpp"
#include "gpttomo/tomography.hpp"

using namespace gpttomo;

namespace {

using CMat = std::array<std::array<std::complex<double>, 4>, 4>;

// Complex-arithmetic oracle for the 4x4 picture of two-rebit states.
CMat kron2(const std::array<std::array<std::complex<double>, 2>, 2>& a,
           const std::array<std::array<std::complex<double>, 2>, 2>& b) {
  CMat out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return out;
}

std::array<std::array<std::complex<double>, 2>, 2> y_projector(int sign) {
  // (1 +/- sigma_y)/2 with complex entries.
  const std::complex<double> i(0, 1);
  return {{{0.5, sign * -0.5 * i}, {sign * 0.5 * i, 0.5}}};
}

}  // namespace

TEST_CASE("pauli word spaces have the expected dimensions") {
  CHECK(PauliStringSpace::rebit_chain(1).dim() == 3);
  CHECK(PauliStringSpace::rebit_chain(2).dim() == 10);
  CHECK(PauliStringSpace::rebit_chain(3).dim() == 36);
  CHECK(PauliStringSpace::rebit_chain(4).dim() == 136);
  CHECK(PauliStringSpace::two_rebit().dim() == 10);
  CHECK(PauliStringSpace::qubit_pair().dim() == 16);
}

TEST_CASE("two-rebit coordinate labels follow the documented order") {
  const std::vector<std::string> expected = {"II", "XI", "ZI", "IX", "IZ",
                                             "XX", "XZ", "ZX", "ZZ", "YY"};
  CHECK(PauliStringSpace::two_rebit().labels() == expected);
  CHECK(make_two_rebit().joint.labels == expected);
}

TEST_CASE("classical systems") {
  const GptSystem bit = make_classical(2);
  CHECK(bit.dim == 2);
  CHECK(bit.state_generators.size() == 2);
  CHECK(bit.effect_generators.size() == 4);  // all 0/1 vectors
  CHECK(bit.in_normalized_states({0.3, 0.7}));
  CHECK_FALSE(bit.in_normalized_states({1.2, -0.2}));
  CHECK_THROWS(make_classical(0));
}

TEST_CASE("rebit frame states are normalized and the disk predicate works") {
  const GptSystem rebit = make_rebit();
  for (const Vec& w : rebit.state_generators)
    CHECK(dot(rebit.unit_effect, w) == doctest::Approx(1.0));
  CHECK(rebit.in_normalized_states({1.0, 1.0, 0.0}));
  CHECK_FALSE(rebit.in_normalized_states({1.0, 1.1, 0.0}));
  CHECK(rebit.in_effects({0.5, 0.5, 0.0}));
  CHECK_FALSE(rebit.in_effects({0.5, 0.8, 0.0}));
  CHECK(rebit.in_effects({1.0, 0.0, 0.0}));  // the unit
}

TEST_CASE("two-rebit joint: named states are valid, projected Bell state is not") {
  const CompositeSystem comp = make_two_rebit();
  for (const auto& [name, st] : named_states())
    CHECK_MESSAGE(comp.joint.in_normalized_states(st), name);

  Vec projected = named_states().at("phi-plus");
  projected[9] = 0.0;  // forget the holistic component
  CHECK_FALSE(comp.joint.in_normalized_states(projected));
  CHECK(min_eigenvalue_symmetric(iota_embed(projected)) == doctest::Approx(-0.25).epsilon(1e-9));
}

TEST_CASE("hiding pair states are orthogonal under the discriminators") {
  const CompositeSystem comp = make_two_rebit();
  const auto& [e0, e1] = *comp.discrimination_measurement;
  const Vec w0 = named_states().at("hiding-zero");
  const Vec w1 = named_states().at("hiding-one");
  CHECK(dot(e0, w0) == doctest::Approx(1.0));
  CHECK(dot(e0, w1) == doctest::Approx(0.0));
  CHECK(dot(e1, w0) == doctest::Approx(0.0));
  CHECK(dot(e1, w1) == doctest::Approx(1.0));
}

TEST_CASE("iota embeds the holistic pair as the y-basis mixtures") {
  for (int sign : {+1, -1}) {
    const Vec w = named_states().at(sign > 0 ? "omega-plus" : "omega-minus");
    const Mat m = iota_embed(w);
    // Oracle: (P+ (x) P(sign) + P- (x) P(-sign)) / 2 with complex arithmetic.
    const CMat t1 = kron2(y_projector(+1), y_projector(sign));
    const CMat t2 = kron2(y_projector(-1), y_projector(-sign));
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        const std::complex<double> expected = 0.5 * (t1[r][c] + t2[r][c]);
        CHECK(std::fabs(expected.imag()) < 1e-12);
        CHECK(m(r, c) == doctest::Approx(expected.real()).epsilon(1e-12));
      }
  }
}

TEST_CASE("iota of a product is the Kronecker product and preserves trace") {
  const CompositeSystem comp = make_two_rebit();
  Rng rng(29);
  for (int rep = 0; rep < 5; ++rep) {
    const double t1 = rng.next_double() * 6.28, t2 = rng.next_double() * 6.28;
    const Vec a = {1.0, 0.8 * std::cos(t1), 0.8 * std::sin(t1)};
    const Vec b = {1.0, 0.5 * std::cos(t2), 0.5 * std::sin(t2)};
    const Mat m = iota_embed(boxtimes_state(a, b, comp));
    double trace = 0.0;
    for (int i = 0; i < 4; ++i) trace += m(i, i);
    CHECK(trace == doctest::Approx(1.0));
  }
}

TEST_CASE("ppt test on reference states") {
  CHECK(ppt_separable_2x2(iota_embed(named_states().at("omega-plus"))));
  CHECK(ppt_separable_2x2(iota_embed(named_states().at("omega-minus"))));
  CHECK_FALSE(ppt_separable_2x2(iota_embed(named_states().at("phi-plus"))));
  CHECK(ppt_separable_2x2(iota_embed(named_states().at("maximally-mixed"))));
  CHECK(ppt_separable_qubit_pair(iota_coords(named_states().at("omega-plus"))));
  CHECK_FALSE(ppt_separable_qubit_pair(iota_coords(named_states().at("psi-minus"))));
}

TEST_CASE("swirl operator") {
  const Mat o = swirl_operator();

  SUBCASE("it is idempotent") { CHECK((o * o - o).max_abs() < 1e-12); }

  SUBCASE("it maps the embedded Bell state to its local-span part") {
    const Vec swirled = o.apply(iota_coords(named_states().at("phi-plus")));
    Vec projected = named_states().at("phi-plus");
    projected[9] = 0.0;
    CHECK(norm_inf(sub(swirled, iota_coords(projected))) < 1e-12);
  }

  SUBCASE("it fixes embedded real product states") {
    const CompositeSystem comp = make_two_rebit();
    const Vec prod = boxtimes_state({1.0, 0.6, -0.3}, {1.0, 0.1, 0.9}, comp);
    const Vec e = iota_coords(prod);
    CHECK(norm_inf(sub(o.apply(e), e)) < 1e-12);
  }

  SUBCASE("composed with iota it reproduces the local-span projector") {
    const CompositeSystem comp = make_two_rebit();
    const Mat pi_tl = build_pi_tl(comp);
    Rng rng(31);
    for (int rep = 0; rep < 25; ++rep) {
      Mat g(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) g(i, j) = rng.next_gaussian();
      Mat rho = g * g.transposed();
      double trace = 0.0;
      for (std::size_t i = 0; i < 4; ++i) trace += rho(i, i);
      rho = rho.scaled(1.0 / trace);
      // Read the word coefficients off the matrix.
      Vec coords(10, 0.0);
      const auto& space = PauliStringSpace::two_rebit();
      for (std::size_t k = 0; k < 10; ++k) {
        Vec unit(10, 0.0);
        unit[k] = 1.0;
        const Mat word = reconstruct_real(space, unit, 1.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < 4; ++i)
          for (std::size_t j = 0; j < 4; ++j) acc += word(i, j) * rho(i, j);
        coords[k] = acc;
      }
      const Vec lhs = iota_coords(pi_tl.apply(coords));
      const Vec rhs = o.apply(iota_coords(coords));
      CHECK(norm_inf(sub(lhs, rhs)) < 1e-9);
    }
  }
}

TEST_CASE("named state coefficients") {
  const Vec phi = named_states().at("phi-plus");
  CHECK(norm_inf(sub(phi, {1, 0, 0, 0, 0, 1, 0, 0, 1, -1})) < 1e-15);
  CHECK(named_states().at("omega-plus")[9] == doctest::Approx(1.0));
  CHECK(named_states().at("omega-minus")[9] == doctest::Approx(-1.0));
  CHECK(norm_inf(sub(named_states().at("maximally-mixed"), {1, 0, 0, 0, 0, 0, 0, 0, 0, 0})) ==
        0.0);
}

TEST_CASE("bct product rule reproduces every product state") {
  const CompositeSystem comp = make_bct_pair();
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      Vec a(2, 0.0), b(2, 0.0);
      a[i] = 1.0;
      b[j] = 1.0;
      Vec expected(8, 0.0);
      expected[4 * i + 2 * j] = 0.5;
      expected[4 * i + 2 * j + 1] = 0.5;
      CHECK(norm_inf(sub(boxtimes_state(a, b, comp), expected)) == 0.0);
    }
}

TEST_CASE("bct local encodings permute bit and sign independently") {
  Vec start(8, 0.0);
  start[1] = 1.0;  // |(00)->
  Vec flipped = bct_local_encode(true, false).apply(start);
  CHECK(flipped[4 + 1] == doctest::Approx(1.0));  // |(10)->
  Vec signed_ = bct_local_encode(false, true).apply(start);
  CHECK(signed_[0] == doctest::Approx(1.0));  // |(00)+>
}

TEST_CASE("carrier dimension formula for real-quantum systems") {
  CHECK(rqt_carrier_dim(2) == 3);
  CHECK(rqt_carrier_dim(4) == 10);
  CHECK(rqt_carrier_dim(3) == 6);
}

TEST_CASE("tensor and contract are mutually consistent") {
  // Contracting one factor of a product with a local effect returns the
  // other factor weighted by the effect value.
  const auto& site = PauliStringSpace::rebit_chain(1);
  const auto& pair = PauliStringSpace::two_rebit();
  const Vec a = {1.0, 0.4, -0.2};
  const Vec b = {1.0, -0.65, 0.3};
  const Vec joint = tensor_coords(site, a, site, b, pair);
  const Vec e = {0.5, 0.25, -0.25};
  const Vec out = contract_coords(pair, joint, {0}, site, e, site);
  CHECK(norm_inf(sub(out, scale(b, dot(e, a)))) < 1e-12);
}

TEST_CASE("registry resolves the documented names") {
  for (const std::string& name : composite_names()) CHECK_NOTHROW(make_composite(name));
  CHECK_THROWS_AS(make_composite("rebit"), UnsupportedTheoryError);
}
