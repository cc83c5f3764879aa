#include <doctest.h>

#include <cmath>

#include "markovlab/channels.hpp"

using namespace markovlab;

namespace {

const LabelList kQubit = {{"Q", 2}};
const LabelList kQubitOut = {{"Q'", 2}};

Channel transpose_channel() {
  // Choi of X -> X^T is the SWAP matrix.
  return Channel::from_choi(swap_matrix(2), kQubit, kQubitOut);
}

Channel depolarizing() {
  Mat j = Mat::Zero(4, 4);
  j(0, 0) = j(1, 1) = j(2, 2) = j(3, 3) = 0.5;
  return Channel::from_choi(j, kQubit, kQubitOut);
}

}  // namespace

TEST_CASE("channel construction and Choi") {
  const Channel id = Channel::from_kraus({identity(2)}, kQubit, kQubitOut);
  const Spectrum s = eig_hermitian(id.choi());
  CHECK(s.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(s.eigenvalues[1]) < 1e-12);
  CHECK((id.choi() - 2.0 * projector(max_entangled_ket(2))).norm() < 1e-12);

  // amplitude-damping limit: Kraus {|0><0|, |0><1|}
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = 1;
  k1(0, 1) = 1;
  const Channel ad = Channel::from_kraus({k0, k1}, kQubit, kQubitOut);
  const ChannelReport rep = classify(ad);
  CHECK(rep.is_cp);
  CHECK(rep.is_tp);

  CHECK_THROWS_AS(Channel::from_choi(Mat::Zero(5, 5), kQubit, kQubitOut),
                  DimensionError);

  const Spectrum st = eig_hermitian(transpose_channel().choi());
  CHECK(st.eigenvalues.minCoeff() == doctest::Approx(-1.0).epsilon(1e-12));

  CHECK((depolarizing().apply_matrix(projector(basis_ket(2, 0))) -
         identity(2) / 2.0)
            .norm() < 1e-12);
}

TEST_CASE("classify") {
  const Channel id = Channel::from_kraus({identity(2)}, kQubit, kQubitOut);
  const ChannelReport rid = classify(id);
  CHECK(rid.is_cp);
  CHECK(rid.is_tp);

  const ChannelReport rt = classify(transpose_channel());
  CHECK(!rt.is_cp);
  CHECK(rt.is_tp);
  CHECK(rt.min_choi_eig == doctest::Approx(-1.0).epsilon(1e-9));

  const Channel half =
      Channel::from_kraus({0.5 * identity(2)}, kQubit, kQubitOut);
  const ChannelReport rh = classify(half);
  CHECK(rh.is_cp);
  CHECK(!rh.is_tp);
  CHECK(rh.tp_residual ==
        doctest::Approx((0.25 * identity(2) - identity(2)).norm())
            .epsilon(1e-12));
}

TEST_CASE("apply") {
  const LabeledState bell = LabeledState::make(
      projector(max_entangled_ket(2)), {{"R", 2}, {"Q", 2}});

  const Channel id = Channel::from_kraus({identity(2)}, kQubit, kQubitOut);
  const LabeledState same = apply(id, bell, {"Q"});
  CHECK((same.matrix() - bell.matrix()).norm() < 1e-12);
  CHECK(same.labels()[1].name == "Q'");

  const LabeledState depol = apply(depolarizing(), bell, {"Q"});
  CHECK((depol.matrix() - identity(4) / 4.0).norm() < 1e-12);

  CHECK_THROWS_AS(apply(transpose_channel(), bell, {"Q"}), NotPSD);
}

TEST_CASE("compose") {
  const Channel id = Channel::from_kraus({identity(2)}, kQubit, kQubit);
  const Channel dep = depolarizing();

  CHECK((compose(id, dep).choi() - dep.choi()).norm() < 1e-10);

  // depolarizing after any TP map is depolarizing
  Mat k0 = Mat::Zero(2, 2), k1 = Mat::Zero(2, 2);
  k0(0, 0) = 1;
  k1(0, 1) = 1;
  const Channel ad = Channel::from_kraus({k0, k1}, kQubit, kQubit);
  const Channel dep2 = Channel::from_choi(dep.choi(), kQubit, kQubitOut);
  CHECK((compose(dep2, ad).choi() - dep2.choi()).norm() < 1e-10);

  const Channel t = Channel::from_choi(swap_matrix(2), kQubit, kQubit);
  const Mat tt = compose(t, t).choi();
  CHECK((tt - Channel::from_kraus({identity(2)}, kQubit, kQubit).choi())
            .norm() < 1e-12);
}

TEST_CASE("kraus extraction round trip") {
  Mat k0 = std::sqrt(0.7) * identity(2);
  Mat k1(2, 2);
  k1 << 0, std::sqrt(0.3), std::sqrt(0.3), 0;
  const Channel c = Channel::from_kraus({k0, k1}, kQubit, kQubitOut);
  const Channel via_choi = Channel::from_choi(c.choi(), kQubit, kQubitOut);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      Mat unit = Mat::Zero(2, 2);
      unit(i, j) = 1;
      Mat out = Mat::Zero(2, 2);
      for (const auto& k : via_choi.kraus()) out += k * unit * k.adjoint();
      CHECK((out - c.apply_matrix(unit)).norm() < 1e-9);
    }
  CHECK_THROWS_AS(transpose_channel().kraus(), NotPSD);
}

TEST_CASE("isometry channels") {
  const Isometry trivial = Isometry::make(identity(2), kQubit, kQubit);
  const Channel idc = isometry_channel(trivial, {});
  CHECK((idc.choi() - 2.0 * projector(max_entangled_ket(2))).norm() < 1e-12);

  // |psi> -> |psi>|0>, discard the ancilla: identity again
  Mat v = Mat::Zero(4, 2);
  v(0, 0) = 1;
  v(2, 1) = 1;
  const Isometry embed =
      Isometry::make(v, kQubit, {{"Q'", 2}, {"E'", 2}});
  const Channel reduced = isometry_channel(embed, {"E'"});
  CHECK((reduced.choi() - 2.0 * projector(max_entangled_ket(2))).norm() <
        1e-12);

  // full swap with |0><0| environment: constant channel to |0><0|
  const Isometry sw = Isometry::make(swap_matrix(2), {{"Q", 2}, {"E", 2}},
                                     {{"Q'", 2}, {"E'", 2}});
  const Channel swc = isometry_channel(sw, {"E'"});
  const LabeledState in = LabeledState::make(
      tensor(identity(2) / 2.0, projector(basis_ket(2, 0))),
      {{"Q", 2}, {"E", 2}});
  const LabeledState out = apply(swc, in, {"Q", "E"});
  CHECK((out.matrix() - projector(basis_ket(2, 0))).norm() < 1e-12);

  CHECK_THROWS_AS(Isometry::make(Mat::Ones(2, 2), kQubit, kQubit),
                  DimensionError);
}

TEST_CASE("random isometries") {
  const Isometry one = random_isometry(1, 1, 3);
  CHECK(std::abs(std::abs(one.matrix()(0, 0)) - 1.0) < 1e-12);

  for (int s = 0; s < 20; ++s) {
    const Isometry v = random_isometry(3, 5, static_cast<std::uint64_t>(s));
    CHECK((v.matrix().adjoint() * v.matrix() - identity(3)).norm() < 1e-10);
  }

  const Isometry a = random_isometry(2, 4, 9);
  const Isometry b = random_isometry(2, 4, 9);
  CHECK((a.matrix() - b.matrix()).norm() == 0.0);

  double mean = 0.0;
  const int samples = 1000;
  for (int s = 0; s < samples; ++s)
    mean += std::norm(
        random_isometry(2, 4, static_cast<std::uint64_t>(2000 + s))
            .matrix()(0, 0));
  mean /= samples;
  CHECK(std::abs(mean - 0.25) < 0.025);

  CHECK_THROWS_AS(random_isometry(3, 2, 0), DimensionError);
}

TEST_CASE("partial swap") {
  const Mat u0 = partial_swap(0.0).matrix();
  CHECK((u0 - identity(4)).norm() < 1e-15);

  const Mat u90 = partial_swap(M_PI / 2).matrix();
  CHECK((u90 - Complex(0, 1) * swap_matrix(2)).norm() < 1e-12);

  const Mat u = partial_swap(0.3).matrix();
  CHECK((u * u.adjoint() - identity(4)).norm() < 1e-12);
}
