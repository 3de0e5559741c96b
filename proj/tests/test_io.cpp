#include <gtest/gtest.h>

#include <cdelab/ground_state.hpp>
#include <cdelab/io.hpp>

#include <random>
#include <sstream>

using namespace cdelab;

TEST(Format, ShortestRoundTrip) {
  for (double x : {0.1, -1.0 / 3.0, 5.283508001182123, 1e-300, 0.0}) {
    EXPECT_EQ(io::parse_double(io::fmt(x)), x);
  }
  EXPECT_EQ(io::fmt(0.125), "0.125");
}

TEST(Format, ParseListAndErrors) {
  const auto v = io::parse_list("1, -2.5,+3e-2");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_EQ(v[1], -2.5);
  EXPECT_EQ(v[2], 0.03);
  EXPECT_THROW(io::parse_double("abc"), InvalidInput);
  EXPECT_THROW(io::parse_double("1.0x"), InvalidInput);
  EXPECT_THROW(io::parse_list(""), InvalidInput);
}

TEST(Json, FieldRoundTripIsExact) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> n01;
  PeriodicField f(make_space(0.2, 8));
  for (int i = 0; i < f.space->m(); ++i) {
    f.u[i] = n01(rng);
    f.z_plus[i] = n01(rng);
    f.z_minus[i] = n01(rng);
  }
  const auto text = io::field_to_json(f).dump();
  const PeriodicField g = io::field_from_json(io::json::parse(text));
  EXPECT_EQ(g.eps(), 0.2);
  EXPECT_EQ(g.K(), 8);
  EXPECT_EQ(g.u, f.u);
  EXPECT_EQ(g.z_plus, f.z_plus);
  EXPECT_EQ(g.z_minus, f.z_minus);
}

TEST(Json, MalformedFieldDocuments) {
  PeriodicField f(make_space(0.2, 4));
  auto j = io::field_to_json(f);
  j["schema"] = "other/1";
  EXPECT_THROW(io::field_from_json(j), InvalidInput);
  j = io::field_to_json(f);
  j["K"] = 5;
  EXPECT_THROW(io::field_from_json(j), TruncationMismatch);
  EXPECT_THROW(io::field_from_json(io::json::object()), InvalidInput);
}

TEST(Json, OrbitSamplesAreThinned) {
  PeriodicOrbit o;
  for (int i = 0; i <= 10000; ++i) o.trajectory.push(1e-3 * i, State4{1.0, 0.0, 0.0, 0.0});
  const auto j = io::orbit_to_json(o, 101);
  EXPECT_LE(j["samples"].size(), 102u);
  EXPECT_EQ(j["samples"].back()[0].get<double>(), 10.0);
  EXPECT_TRUE(j["epsilon"].is_null());
}

TEST(Csv, RadialRoundTrip) {
  const auto p = closed_form_radial_profile(1.0, log_uniform_grid(0.1, 10.0, 21));
  std::stringstream ss;
  io::write_radial_csv(ss, p);
  const auto q = io::read_radial_csv(ss, RadialChart::euclidean);
  EXPECT_EQ(q.grid, p.grid);
  EXPECT_EQ(q.u, p.u);
  EXPECT_EQ(q.f1, p.f1);
  EXPECT_EQ(q.f2, p.f2);
}

TEST(Csv, TrajectoryIsAcceptedAsCylinderInput) {
  Trajectory tr;
  tr.push(0.5, State4{1.0, 0.1, 0.2, 0.3});
  tr.push(-0.5, State4{0.9, 0.0, 0.1, 0.4});
  std::stringstream ss;
  io::write_trajectory_csv(ss, tr);
  const auto p = io::read_radial_csv(ss, RadialChart::cylinder);
  ASSERT_EQ(p.size(), 2u);
  EXPECT_EQ(p.grid[0], -0.5);
  EXPECT_EQ(p.f2[0], 0.4);
  EXPECT_EQ(p.f1[1], 0.2);
}

TEST(Csv, BadInputs) {
  std::stringstream wrong("x,y,z,w\n1,2,3,4\n");
  EXPECT_THROW(io::read_radial_csv(wrong, RadialChart::euclidean), InvalidInput);
  std::stringstream ragged("r,u,f1,f2\n1,2,3\n");
  EXPECT_THROW(io::read_radial_csv(ragged, RadialChart::euclidean), InvalidInput);
  std::stringstream empty("# nothing\n");
  EXPECT_THROW(io::read_radial_csv(empty, RadialChart::euclidean), InvalidInput);
}

TEST(Csv, FieldSamplesUseCylinderTime) {
  const PeriodicField f = equilibrium_pair(make_space(0.25, 4));
  std::stringstream ss;
  io::write_field_csv(ss, f);
  std::string header, first;
  std::getline(ss, header);
  std::getline(ss, first);
  EXPECT_EQ(header, "t,u,a,b");
  EXPECT_EQ(first.substr(0, first.find(',')), "-4");
}
