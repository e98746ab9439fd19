#include <doctest.h>

#include "oracles.hpp"

using namespace dtnsim;

namespace {

std::vector<ContactInterval> closed(std::initializer_list<std::pair<double, double>> spans) {
  std::vector<ContactInterval> out;
  for (auto [s, e] : spans) out.push_back({s, e});
  return out;
}

std::vector<ContactInterval> as_vector(const ContactWindow& w) { return {w.intervals().begin(), w.intervals().end()}; }

ContactWindow window_with(Seconds size, std::initializer_list<std::pair<double, double>> spans) {
  ContactWindow w(size);
  for (auto [s, e] : spans) {
    w.record_encounter(s);
    w.record_departure(e);
  }
  return w;
}

}  // namespace

TEST_CASE("record_encounter") {
  ContactWindow w(600);
  w.record_encounter(5);
  REQUIRE(w.intervals().size() == 1);
  CHECK(w.intervals()[0].start == 5);
  CHECK(w.intervals()[0].open());

  ContactWindow w2 = window_with(600, {{1, 3}});
  w2.record_encounter(4);
  CHECK(w2.intervals().size() == 2);
  CHECK(w2.intervals()[1] == ContactInterval{4, std::nullopt});

  ContactWindow w3(600);
  w3.record_encounter(1);
  CHECK_THROWS_AS(w3.record_encounter(2), ContactStateError);
  CHECK_THROWS_AS(window_with(600, {{1, 3}}).record_encounter(2), ContactStateError);
}

TEST_CASE("record_departure") {
  ContactWindow w(600);
  w.record_encounter(4);
  w.record_departure(6);
  CHECK(as_vector(w) == closed({{4, 6}}));

  ContactWindow zero(600);
  zero.record_encounter(4);
  zero.record_departure(4);
  CHECK(as_vector(zero) == closed({{4, 4}}));

  ContactWindow none = window_with(600, {{1, 3}});
  CHECK_THROWS_AS(none.record_departure(5), ContactStateError);
}

TEST_CASE("slide") {
  ContactWindow a = window_with(10, {{5, 8}, {12, 14}});
  a.slide(20);
  CHECK(as_vector(a) == closed({{12, 14}}));

  ContactWindow b = window_with(10, {{8, 12}});
  b.slide(20);
  CHECK(as_vector(b) == closed({{10, 12}}));

  ContactWindow c(10);
  c.slide(20);
  CHECK(c.intervals().empty());

  ContactWindow open(10);
  open.record_encounter(2);
  open.slide(30);
  REQUIRE(open.intervals().size() == 1);
  CHECK(open.intervals()[0].start == 20);
  CHECK(open.intervals()[0].open());

  ContactWindow twice = window_with(10, {{5, 8}, {9, 15}});
  twice.slide(17);
  const auto once = as_vector(twice);
  twice.slide(17);
  CHECK(as_vector(twice) == once);
  CHECK_THROWS_AS(twice.slide(16), ContactStateError);
}

TEST_CASE("link weight worked examples") {
  // Window-relative contact [4, 6] in a 10 s window: two 4 s triangles.
  ContactWindow w = window_with(10, {{4, 6}});
  w.slide(10);
  CHECK(w.link_weight(10) == 0.625);
  CHECK(oracle::integrate_remaining_time({{4, 6}}, 10, 10, 0.01) == doctest::Approx(16.0).epsilon(1e-12));

  ContactWindow full(10);
  full.record_encounter(0);
  full.slide(10);
  CHECK(full.link_weight(10) == kMaxLinkWeight);

  ContactWindow empty(600);
  empty.slide(1000);
  CHECK(empty.link_weight(1000) == doctest::Approx(1.0 / 300.0).epsilon(1e-15));
  CHECK(empty.link_weight(1000) < 0.01);
}

TEST_CASE("zero-length contacts split gaps") {
  ContactWindow w = window_with(10, {{5, 5}});
  w.slide(10);
  CHECK(w.link_weight(10) == doctest::Approx(10.0 / 25.0));
}

TEST_CASE("closed form agrees with quadrature on random windows") {
  Rng rng(4242);
  for (int trial = 0; trial < 20; ++trial) {
    const double size = static_cast<double>(rng.uniform_int(20, 120));
    const double now = size + static_cast<double>(rng.uniform_int(0, 50));
    const double start = now - size;
    std::vector<std::pair<double, double>> spans;
    ContactWindow w(size);
    long cursor = 0;
    const long cells = static_cast<long>(size * 100);
    while (true) {
      const long s = cursor + static_cast<long>(rng.uniform_int(0, 2000));
      const long e = s + static_cast<long>(rng.uniform_int(0, 800));
      if (e >= cells) break;
      spans.emplace_back(start + static_cast<double>(s) * 0.01, start + static_cast<double>(e) * 0.01);
      w.record_encounter(spans.back().first);
      w.record_departure(spans.back().second);
      cursor = e;
    }
    w.slide(now);
    const double integral = oracle::integrate_remaining_time(spans, now, size, 0.01);
    CHECK(w.link_weight(now) == doctest::Approx(size / integral).epsilon(1e-6));
  }
}

TEST_CASE("adding a contact never lowers the weight") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const double size = 600;
    std::vector<double> points;
    for (int i = 0; i < 8; ++i) points.push_back(std::floor(rng.uniform(0, size)));
    std::sort(points.begin(), points.end());
    ContactWindow base(size), more(size);
    const int skip = static_cast<int>(rng.uniform_int(0, 3));
    for (int c = 0; c < 4; ++c) {
      more.record_encounter(points[2 * c]);
      more.record_departure(points[2 * c + 1]);
      if (c == skip) continue;
      base.record_encounter(points[2 * c]);
      base.record_departure(points[2 * c + 1]);
    }
    base.slide(size);
    more.slide(size);
    CHECK(more.link_weight(size) >= base.link_weight(size));
  }
}

TEST_CASE("weight depends only on the pattern relative to the window") {
  ContactWindow early = window_with(100, {{10, 20}, {50, 55}});
  ContactWindow late = window_with(100, {{1010, 1020}, {1050, 1055}});
  early.slide(100);
  late.slide(1100);
  CHECK(early.link_weight(100) == late.link_weight(1100));
  // gaps 10, 30, 45 -> (100 + 900 + 2025) / 2
  CHECK(early.link_weight(100) == doctest::Approx(100.0 / 1512.5));
}
