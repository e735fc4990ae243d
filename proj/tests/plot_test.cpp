#include <gtest/gtest.h>

#include <cmath>
#include <regex>
#include <set>

#include "qkernel/plot.hpp"

using namespace qkernel;

namespace {

std::vector<double> linear_decision(const Points& pts) {
  std::vector<double> f;
  for (const auto& p : pts) f.push_back(p[0] - p[1]);
  return f;
}

}  // namespace

TEST(Plot, GridHasResolutionSquaredValues) {
  std::size_t calls = 0;
  const auto g = evaluate_grid({0, 1, 0, 1}, 100, [&](const Points& pts) {
    calls += pts.size();
    return linear_decision(pts);
  });
  EXPECT_EQ(calls, 10000u);
  EXPECT_EQ(g.values.size(), 10000u);
  EXPECT_DOUBLE_EQ(g.x_at(0), 0.0);
  EXPECT_DOUBLE_EQ(g.x_at(99), 1.0);
  EXPECT_DOUBLE_EQ(g.at(99, 0), 1.0);  // x=1, y=0
}

TEST(Plot, BoundsPadding) {
  const auto b = bounds_of({{0, 0}, {2, 4}});
  EXPECT_DOUBLE_EQ(b.xmin, -0.1);
  EXPECT_DOUBLE_EQ(b.xmax, 2.1);
  EXPECT_DOUBLE_EQ(b.ymin, -0.2);
  EXPECT_DOUBLE_EQ(b.ymax, 4.2);
  EXPECT_THROW(bounds_of({{0, 0, 0}}), Error);
}

TEST(Plot, ContourFollowsTheDiagonal) {
  const auto g = evaluate_grid({-1, 1, -1, 1}, 21, linear_decision);
  const auto segs = zero_contour(g);
  ASSERT_FALSE(segs.empty());
  for (const auto& s : segs) {
    EXPECT_NEAR(s.x0, s.y0, 1e-12);
    EXPECT_NEAR(s.x1, s.y1, 1e-12);
  }
}

TEST(Plot, NoContourWithoutSignChange) {
  const auto g = evaluate_grid({0, 1, 0, 1}, 10, [](const Points& pts) { return std::vector<double>(pts.size(), 1.0); });
  EXPECT_TRUE(zero_contour(g).empty());
}

TEST(Plot, SvgPointsUseTwoColoursAndShapeByPrediction) {
  const Points pts{{0.1, 0.5}, {0.9, 0.2}, {0.3, 0.8}, {0.7, 0.1}};
  const std::vector<int> truth{-1, 1, -1, 1};
  const std::vector<int> pred{-1, 1, 1, -1};
  const auto g = evaluate_grid(bounds_of(pts), 100, linear_decision);
  const auto svg = render_decision_svg(g, pts, truth, pred, "t");

  const std::regex point(R"re(<(circle|rect) class="point"[^>]*fill="(#[0-9a-f]{6})")re");
  std::set<std::string> colours;
  int circles = 0, squares = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), point); it != std::sregex_iterator(); ++it) {
    colours.insert((*it)[2]);
    ((*it)[1] == "circle" ? circles : squares)++;
  }
  EXPECT_EQ(colours, (std::set<std::string>{kPositiveColor, kNegativeColor}));
  EXPECT_EQ(circles, 2);
  EXPECT_EQ(squares, 2);
  EXPECT_NE(svg.find("<line"), std::string::npos);
  EXPECT_EQ(svg, render_decision_svg(g, pts, truth, pred, "t"));
}

TEST(Plot, LengthMismatchRejected) {
  const Points pts{{0, 0}, {1, 1}};
  const std::vector<int> one{1};
  const std::vector<int> two{1, -1};
  const auto g = evaluate_grid(bounds_of(pts), 10, linear_decision);
  EXPECT_THROW(render_decision_svg(g, pts, one, two, ""), Error);
}
