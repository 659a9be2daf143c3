#include <gtest/gtest.h>

#include "polyclark/serialize.hpp"

using namespace polyclark;

TEST(Serialize, RationalMapRoundTrip) {
  for (const auto& name : catalog_names()) {
    const auto phi = catalog(name);
    const auto back = rational_map_from_json(json::parse(to_json(phi).dump()));
    EXPECT_TRUE(same_map(phi, back)) << name;
    EXPECT_EQ(back.label(), name);
  }
}

TEST(Serialize, RejectsMismatchedDimension) {
  auto j = to_json(catalog("product"));
  j["dimension"] = 3;
  EXPECT_THROW(rational_map_from_json(j), InvalidArgument);
  EXPECT_THROW(complex_from_json(json::array({1.0})), InvalidArgument);
  EXPECT_EQ(complex_from_json(json(2.5)), Complex(2.5));
}

TEST(Serialize, DoublesRoundTrip) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23}) EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Serialize, MeasureTags) {
  const auto q = quadrature(64);
  EXPECT_EQ(to_json(construct_clark(catalog("coordinate"), 1.0, q).measure)["type"], "product");
  const auto g = construct_clark(catalog("product"), 1.0, q);
  const auto jg = to_json(g.measure, 16);
  EXPECT_EQ(jg["type"], "graph");
  EXPECT_EQ(jg["samples"].size(), 16u);
  EXPECT_EQ(to_json(construct_clark(catalog("rational_example"), -1.0, q).measure)["type"], "sum");
  EXPECT_EQ(to_json(construct_clark(catalog("halfsum"), 1.0, q).measure)["type"], "abs_cont");
}

TEST(Serialize, GraphCsv) {
  const auto g = clark_graph_2d(catalog("product"), 1.0, 4);
  const auto csv = graph_table_csv(g);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "angle,branch,eta_angle,weight");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  EXPECT_EQ(csv.substr(csv.find('\n') + 1, 6), "0,0,0,");
}

TEST(Serialize, CertificateNullsInfinity) {
  ClarkCertificate c;
  const auto j = to_json(c);
  EXPECT_TRUE(j["poisson_match_residual"].is_null());
  EXPECT_FALSE(j["accepted"].get<bool>());
}
