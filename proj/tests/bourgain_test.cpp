#include "gkdv/bourgain.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "gkdv/datum.hpp"

namespace {

using namespace gkdv;

// Single free wave (1/2) e^{i(kx + k^3 t)} + c.c. sampled at M times.
SpaceTimeField free_wave(const Grid& g, std::ptrdiff_t m, double h, std::size_t count) {
  std::vector<SpectralField> samples;
  const double k = g.wavenumber(m);
  for (std::size_t n = 0; n < count; ++n) {
    std::vector<Complex> modes(g.half_size());
    modes[static_cast<std::size_t>(m)] = 0.5 * std::polar(1.0, k * k * k * h * static_cast<double>(n));
    samples.emplace_back(g, std::move(modes));
  }
  return SpaceTimeField(h, std::move(samples));
}

SpaceTimeField solution_segment(double amplitude) {
  DatumSpec spec;
  spec.family = DatumFamily::sech_pair;
  spec.amplitude = amplitude;
  SolverConfig config;
  config.dt = 2e-3;
  config.horizon = 0.1;
  return SpaceTimeField::from_trajectory(evolve(make_datum(Grid(256, 40.0), spec), config));
}

TEST(SpaceTimeField, Preconditions) {
  const Grid g(16, 2 * kPi);
  EXPECT_THROW(SpaceTimeField(0.1, std::vector<SpectralField>(15, SpectralField(g))), std::invalid_argument);
  EXPECT_THROW(SpaceTimeField(0.0, std::vector<SpectralField>(16, SpectralField(g))), std::invalid_argument);
  std::vector<SpectralField> mixed(16, SpectralField(g));
  mixed.back() = SpectralField(Grid(16, 1.0));
  EXPECT_THROW(SpaceTimeField(0.1, mixed), std::invalid_argument);
}

TEST(BourgainNorm, ZeroField) {
  const SpaceTimeField zero(0.1, std::vector<SpectralField>(16, SpectralField(Grid(16, 2.0))));
  EXPECT_EQ(bourgain_norm(zero, {0.3, 1.0, 0.7}), 0.0);
}

TEST(BourgainNorm, UnitWeightIsTaperedSpaceTimeL2) {
  const SpaceTimeField u = solution_segment(1.0);
  const std::size_t count = u.size();
  double expected = 0.0;
  for (std::size_t n = 0; n < count; ++n) {
    const double w = 0.5 * (1.0 - std::cos(2 * kPi * static_cast<double>(n) / static_cast<double>(count - 1)));
    const double l2 = l2_norm(u.samples()[n]);
    expected += w * w * l2 * l2 * u.time_step();
  }
  EXPECT_NEAR(bourgain_norm(u, {}), std::sqrt(expected), 1e-12 * std::sqrt(expected));

  BourgainParams rect;
  rect.window.taper = Taper::rectangular;
  double plain = 0.0;
  for (const auto& s : u.samples()) plain += l2_norm(s) * l2_norm(s) * u.time_step();
  EXPECT_NEAR(bourgain_norm(u, rect), std::sqrt(plain), 1e-12 * std::sqrt(plain));
}

TEST(BourgainNorm, ModulationCentredOnDispersionSurface) {
  const Grid g(64, 2 * kPi);
  std::vector<double> ratios;
  for (std::ptrdiff_t m : {2, 5, 10}) {
    const SpaceTimeField u = free_wave(g, m, 0.01, 64);
    ratios.push_back(bourgain_norm(u, {0.0, 0.0, 1.0}) / bourgain_norm(u, {0.0, 0.0, 0.0}));
  }
  for (double r : ratios) EXPECT_NEAR(r, ratios.front(), 0.1 * ratios.front());
}

TEST(BourgainNorm, MonotoneInB) {
  const SpaceTimeField u = solution_segment(1.0);
  double last = 0.0;
  for (double b : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double v = bourgain_norm(u, {0.2, 0.0, b});
    EXPECT_GE(v, last);
    last = v;
  }
}

TEST(BourgainNorm, RejectsBadWindowAndOverflow) {
  const SpaceTimeField u = solution_segment(1.0);
  BourgainParams p;
  p.window.width = 2.0 * u.span();
  EXPECT_THROW(bourgain_norm(u, p), std::invalid_argument);
  p.window.width = 5.0 * u.time_step();
  EXPECT_THROW(bourgain_norm(u, p), std::invalid_argument);
  p = {};
  p.b = 400.0;
  EXPECT_THROW(bourgain_norm(u, p), OverflowGuardError);
}

TEST(BourgainNorm, PartialWindowUsesLeadingSamples) {
  const SpaceTimeField u = solution_segment(1.0);
  BourgainParams p;
  p.window.width = 0.5 * u.span();
  const double half = bourgain_norm(u, p);
  EXPECT_GT(half, 0.0);
  EXPECT_LT(half, bourgain_norm(u, {}));
}

TEST(MultilinearProbe, ValidatesExponents) {
  MultilinearProbe p;
  EXPECT_NO_THROW(p.validate());
  p.b = 0.5;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.b_prime = -0.3;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.s = -0.2;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.s = -0.1;
  p.b_prime = -0.45;  // needs b' < s - 1/3
  EXPECT_NO_THROW(p.validate());
  p.b_prime = -0.42;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(MultilinearProbe, ZeroFactorGivesZero) {
  const SpaceTimeField u = solution_segment(1.0);
  const SpaceTimeField zero(u.time_step(), std::vector<SpectralField>(u.size(), SpectralField(u.grid())));
  EXPECT_EQ(probe_multilinear({&u, &u, &zero, &u}, {}), 0.0);
}

TEST(MultilinearProbe, ScaleInvariant) {
  const SpaceTimeField u = solution_segment(1.0);
  std::vector<SpectralField> scaled;
  for (const auto& s : u.samples()) scaled.push_back(3.0 * s);
  const SpaceTimeField v(u.time_step(), scaled);
  const double base = probe_multilinear({&u, &u, &u, &u}, {});
  EXPECT_NEAR(probe_multilinear({&v, &u, &v, &u}, {}), base, 1e-12 * base);
}

TEST(MultilinearProbe, BoundedAcrossSigma) {
  for (double amplitude : {0.5, 1.0, 1.5}) {
    const SpaceTimeField u = solution_segment(amplitude);
    MultilinearProbe p;
    const double at_zero = probe_multilinear({&u, &u, &u, &u}, p);
    p.sigma = 0.1;
    const double at_tenth = probe_multilinear({&u, &u, &u, &u}, p);
    EXPECT_GT(at_zero, 0.0);
    EXPECT_LT(std::max(at_zero, at_tenth) / std::min(at_zero, at_tenth), 10.0) << amplitude;
  }
}

TEST(MultilinearProbe, MismatchedSamplingIsRejected) {
  const SpaceTimeField u = solution_segment(1.0);
  const SpaceTimeField w(u.time_step() * 2, u.samples());
  EXPECT_THROW(probe_multilinear({&u, &u, &u, &w}, {}), std::invalid_argument);
}

}  // namespace
