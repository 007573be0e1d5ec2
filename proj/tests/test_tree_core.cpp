#include <random>

#include "doctest.h"
#include "support.hpp"
#include "thompson/error.hpp"

using namespace thompson;
using namespace testing;

namespace {

  Element const X0 = el("00>0 01>10 1>11");
  Element const X1 = el("0>0 100>10 101>110 11>111");

  ErrorKind kind_of(auto&& f) {
    try {
      f();
    } catch (Error const& e) {
      return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::FormatError;
  }

  Element power(Element const& g, int k) {
    Element r;
    Element const step = k >= 0 ? g : invert(g);
    for (int i = 0; i < std::abs(k); ++i) {
      r = multiply(r, step);
    }
    return r;
  }

}  // namespace

TEST_CASE("binary words: run-length storage behaves like a string") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 2000; ++t) {
    std::string a = random_bits(rng, rng() % 12);
    std::string b = random_bits(rng, rng() % 12);
    if (rng() % 3 == 0) {
      b = a + b;
    }
    BinaryWord wa = bw(a.empty() ? "-" : a), wb = bw(b.empty() ? "-" : b);
    CHECK(wa.to_string() == a);
    CHECK((wa + wb).to_string() == a + b);
    CHECK(wa.is_prefix_of(wb) == (b.compare(0, a.size(), a) == 0 && b.size() >= a.size()));
    CHECK(((wa <=> wb) < 0) == (a < b));
    CHECK((wa == wb) == (a == b));
    if (!a.empty()) {
      std::size_t k = rng() % (a.size() + 1);
      CHECK(wa.prefix(k).to_string() == a.substr(0, k));
      CHECK(wa.drop(k).to_string() == a.substr(k));
      CHECK(wa.back() == (a.back() == '1'));
    }
  }
  CHECK(BinaryWord::repeat(false, 500000).size() == 500000);
  CHECK(BinaryWord::repeat(false, 500000).number_of_runs() == 1);
  CHECK(kind_of([] { (void) BinaryWord::from_string("012"); }) == ErrorKind::FormatError);
}

TEST_CASE("make_tree examples") {
  CHECK(make_tree({bw("-")}).num_leaves() == 1);
  CHECK(make_tree({bw("00"), bw("01"), bw("1")}).num_leaves() == 3);
  CHECK(kind_of([] { make_tree({bw("0"), bw("01"), bw("1")}); }) == ErrorKind::PrefixViolation);
  CHECK(kind_of([] { make_tree({bw("00"), bw("1")}); }) == ErrorKind::IncompleteCode);
  CHECK(kind_of([] { make_tree({bw("0"), bw("10")}); }) == ErrorKind::IncompleteCode);
  CHECK(kind_of([] { make_tree({bw("01"), bw("1")}); }) == ErrorKind::IncompleteCode);
  CHECK(kind_of([] { diagram(raw("0>0 0>1")); }) == ErrorKind::NotABijection);
  CHECK(kind_of([] { diagram(raw("0>0 1>0")); }) == ErrorKind::NotABijection);
}

TEST_CASE("make_tree agrees with caret expansion on random codes") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    auto tree = random_tree(rng, 1 + rng() % 10);
    std::vector<BinaryWord> words;
    for (auto const& s : tree) {
      words.push_back(BinaryWord::from_string(s));
    }
    CHECK(make_tree(words).num_leaves() == tree.size());
    if (tree.size() > 1) {
      auto broken = words;
      broken.erase(broken.begin() + static_cast<std::ptrdiff_t>(rng() % broken.size()));
      CHECK(kind_of([&] { make_tree(broken); }) == ErrorKind::IncompleteCode);
    }
  }
}

TEST_CASE("reduce examples") {
  CHECK(el("00>00 01>01 1>1").is_identity());
  CHECK(to_raw(el("00>0 01>10 1>11")) == raw("00>0 01>10 1>11"));
  // Expected value found by naive_reduce over every removal order.
  CHECK(to_raw(el("000>00 001>01 01>10 1>11")) == raw("00>0 01>10 1>11"));
  CHECK(naive_reduce(raw("000>00 001>01 01>10 1>11")) == raw("00>0 01>10 1>11"));
}

TEST_CASE("reduce: confluence against random removal orders and the naive reducer") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 3000; ++t) {
    auto kind = static_cast<Kind>(t % 3);
    auto base = random_raw(rng, 1 + rng() % 8, kind);
    // Insert dipoles to get a non-reduced diagram.
    for (int k = 0; k < 4; ++k) {
      auto& p = base[rng() % base.size()];
      auto d = p.first, r = p.second;
      p = {d + "0", r + "0"};
      base.emplace_back(d + "1", r + "1");
    }
    auto d = diagram(base);
    Element canon = reduce(d);
    CHECK(to_raw(canon) == naive_reduce(base));
    for (int k = 0; k < 3; ++k) {
      CHECK(reduce_randomized(d, rng) == canon);
    }
    CHECK(dipoles(canon.pairs()).empty());
  }
}

TEST_CASE("multiply, invert examples") {
  CHECK(multiply(X0, invert(X0)).is_identity());
  // Frozen from naive_product (composition of prefix maps on length-4 words).
  CHECK(to_raw(multiply(X0, X0)) == raw("000>0 001>10 01>110 1>111"));
  CHECK(naive_product(to_raw(X0), to_raw(X0)) == raw("000>0 001>10 01>110 1>111"));
  CHECK(to_raw(invert(X0)) == raw("0>00 10>01 11>1"));
  CHECK(invert(Element()).is_identity());
}

TEST_CASE("multiply agrees with the prefix-map oracle") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 1500; ++t) {
    Element a = random_element(rng, 6, static_cast<Kind>(t % 3));
    Element b = random_element(rng, 6, static_cast<Kind>((t / 3) % 3));
    if (max_len(to_raw(a)) + max_len(to_raw(b)) > 14) {
      continue;
    }
    CHECK(to_raw(multiply(a, b)) == naive_product(to_raw(a), to_raw(b)));
  }
}

TEST_CASE("group axioms") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 2000; ++t) {
    Element a = random_element(rng, 9, Kind::V);
    Element b = random_element(rng, 9, Kind::V);
    Element c = random_element(rng, 9, Kind::V);
    CHECK(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)));
    CHECK(multiply(a, Element()) == a);
    CHECK(multiply(Element(), a) == a);
    CHECK(multiply(a, invert(a)).is_identity());
    CHECK(multiply(invert(a), a).is_identity());
    CHECK(invert(invert(a)) == a);
  }
}

TEST_CASE("semantic soundness of multiply") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 2000; ++t) {
    Element a = random_element(rng, 10, Kind::V);
    Element b = random_element(rng, 10, Kind::V);
    Element ab = multiply(a, b);
    std::size_t len = 2 * std::max({max_len(to_raw(a)), max_len(to_raw(b)), max_len(to_raw(ab))});
    BinaryWord w = BinaryWord::from_string(random_bits(rng, len));
    CHECK(apply_prefix(ab, w) == apply_prefix(b, apply_prefix(a, w)));
  }
}

TEST_CASE("apply_prefix, edge_depths, classify examples") {
  CHECK(apply_prefix(X0, bw("01")) == bw("10"));
  CHECK(apply_prefix(X0, bw("0110")) == bw("1010"));
  CHECK(kind_of([] { (void) apply_prefix(X0, bw("0")); }) == ErrorKind::Undetermined);
  CHECK(edge_depths(X0) == EdgeDepths{1, 2});
  CHECK(edge_depths(invert(X0)) == EdgeDepths{2, 1});
  CHECK(edge_depths(Element()) == EdgeDepths{0, 0});
  CHECK(classify(X0) == Membership::F);
  CHECK(classify(el("0>11 10>0 11>10")) == Membership::T_only);
  CHECK(classify(el("00>01 01>00 1>1")) == Membership::V_only);
  CHECK(classify(el("0>1 1>0")) == Membership::T_only);
}

TEST_CASE("copy_into_interval examples") {
  CHECK(copy_into_interval(X0, bw("1")) == X1);
  // F_[0]-copy of x0 equals x0 x0 x1^-1 x0^-1.
  CHECK(copy_into_interval(X0, bw("0")) == multiply(multiply(multiply(X0, X0), invert(X1)), invert(X0)));
  CHECK(copy_into_interval(Element(), bw("0110")).is_identity());
  CHECK(copy_into_interval(X0, bw("-")) == X0);
  CHECK(kind_of([] { (void) copy_into_interval(el("0>1 1>0"), bw("1")); }) == ErrorKind::NotInF);
  // Branch description.
  CHECK(to_raw(copy_into_interval(X0, bw("01")))
        == raw("00>00 0100>010 0101>0110 011>0111 1>1"));
}

TEST_CASE("fixes_interval_pointwise examples") {
  CHECK(fixes_interval_pointwise(X1, bw("0")));
  CHECK_FALSE(fixes_interval_pointwise(X0, bw("0")));
  CHECK(fixes_interval_pointwise(Element(), bw("1011")));
  CHECK_FALSE(fixes_interval_pointwise(X1, bw("1")));
  CHECK(fixes_interval_pointwise(X1, bw("0110")));
  // Against direct evaluation on every length-6 word below the interval.
  std::mt19937_64 rng(17);
  for (int t = 0; t < 500; ++t) {
    Element a = random_element(rng, 6, Kind::V);
    BinaryWord u = BinaryWord::from_string(random_bits(rng, rng() % 4));
    bool fixed = true;
    std::size_t const len = u.size() + 8;
    for (std::uint64_t x = 0; x < 256; ++x) {
      BinaryWord w = u;
      for (int i = 7; i >= 0; --i) {
        w.push_back((x >> i) & 1);
      }
      (void) len;
      fixed = fixed && apply_prefix(a, w) == w;
    }
    CHECK(fixes_interval_pointwise(a, u) == fixed);
  }
}

TEST_CASE("encode/decode round trip") {
  std::mt19937_64 rng(19);
  for (int t = 0; t < 500; ++t) {
    Element a = random_element(rng, 12, Kind::V);
    CHECK(Element::decode(a.encode()) == a);
  }
}

TEST_CASE("right multiplication by x0 and its inverse") {
  std::mt19937_64 rng(23);
  Element const X0inv = invert(X0);
  int tested = 0;
  while (tested < 3000) {
    Element g = random_element(rng, 12, static_cast<Kind>(tested % 3));
    if (g.num_leaves() < 4) {
      continue;
    }
    ++tested;
    auto const n = static_cast<long>(g.num_leaves());
    auto const [l0, l1] = edge_depths(g);
    {
      Element h = multiply(g, X0);
      auto const nh = static_cast<long>(h.num_leaves());
      CHECK(nh >= n - 1);
      CHECK(nh <= n + 1);
      if (l0 == 1) {
        CHECK(nh == n + 1);
        CHECK(edge_depths(h).left == 1);
      } else {
        CHECK((nh == n || nh == n - 1));
        CHECK(edge_depths(h).left == l0 - 1);
        if (g.range_strictly_extends(bw("1")) || g.range_strictly_extends(bw("01"))) {
          CHECK(nh == n);
          CHECK(h.range_strictly_extends(bw("1")));
        }
      }
    }
    {
      Element h = multiply(g, X0inv);
      auto const nh = static_cast<long>(h.num_leaves());
      CHECK(nh >= n - 1);
      CHECK(nh <= n + 1);
      if (l1 == 1) {
        CHECK(nh == n + 1);
        CHECK(edge_depths(h).right == 1);
      } else {
        CHECK((nh == n || nh == n - 1));
        CHECK(edge_depths(h).right == l1 - 1);
        if (g.range_strictly_extends(bw("0")) || g.range_strictly_extends(bw("10"))) {
          CHECK(nh == n);
          CHECK(h.range_strictly_extends(bw("0")));
        }
      }
    }
    // Corollaries, i up to 20.
    bool const eq_pos = g.range_strictly_extends(bw("1")) || g.range_strictly_extends(bw("01"));
    bool const eq_neg = g.range_strictly_extends(bw("0")) || g.range_strictly_extends(bw("10"));
    // The bounds come from iterating the one-step lemma, which needs at
    // least 4 leaves at every step; g = x0^-k is the only way to leave that
    // range (see the next test case).
    Element p = g, q = g;
    bool p_ok = true, q_ok = true;
    for (long i = 0; i <= 20; ++i) {
      auto const np = static_cast<long>(p.num_leaves());
      auto const nq = static_cast<long>(q.num_leaves());
      if (p_ok) {
        CHECK(np >= n + i - 2 * (static_cast<long>(l0) - 1));
        if (eq_pos) {
          CHECK(np == std::max(n, n + i - (static_cast<long>(l0) - 1)));
        }
      }
      if (q_ok) {
        CHECK(nq >= n + i - 2 * (static_cast<long>(l1) - 1));
        if (eq_neg) {
          CHECK(nq == std::max(n, n + i - (static_cast<long>(l1) - 1)));
        }
      }
      p_ok = p_ok && np >= 4;
      q_ok = q_ok && nq >= 4;
      p = multiply(p, X0);
      q = multiply(q, X0inv);
    }
  }
}

TEST_CASE("interval copies") {
  std::mt19937_64 rng(29);
  for (int t = 0; t < 3000; ++t) {
    Element g = random_element(rng, 10, static_cast<Kind>(t % 3));
    Element h = random_element(rng, 10, Kind::F);
    auto const& pairs = g.pairs();
    BranchPair const br = pairs[rng() % pairs.size()];
    Element prod = multiply(g, copy_into_interval(h, br.range));
    CHECK(prod.num_leaves() == g.num_leaves() + h.num_leaves() - 1);
    std::vector<BranchPair> expected;
    for (auto const& p : pairs) {
      if (!(p == br)) {
        expected.push_back(p);
      }
    }
    for (auto const& p : h.pairs()) {
      expected.push_back({br.domain + p.domain, br.range + p.range});
    }
    std::sort(expected.begin(), expected.end(),
              [](auto const& x, auto const& y) { return x.domain < y.domain; });
    CHECK(prod.pairs() == expected);
  }
}

TEST_CASE("copy is a homomorphism; disjoint supports commute; classes are closed") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 1500; ++t) {
    Element h1 = random_element(rng, 8, Kind::F);
    Element h2 = random_element(rng, 8, Kind::F);
    BinaryWord u = BinaryWord::from_string(random_bits(rng, rng() % 5));
    CHECK(copy_into_interval(multiply(h1, h2), u)
          == multiply(copy_into_interval(h1, u), copy_into_interval(h2, u)));

    Element a = random_element(rng, 10, Kind::V);
    if (fixes_interval_pointwise(a, u)) {
      Element b = copy_into_interval(h1, u);
      CHECK(multiply(a, b) == multiply(b, a));
    }
    CHECK(classify(multiply(h1, h2)) == Membership::F);
    Element t1 = random_element(rng, 8, Kind::T);
    Element t2 = random_element(rng, 8, Kind::T);
    CHECK(classify(multiply(t1, t2)) != Membership::V_only);
  }
}

TEST_CASE("the x0-power bound fails by one when the orbit reaches the identity") {
  for (int k = 2; k <= 8; ++k) {
    Element g = power(X0, -k);
    auto const n = static_cast<long>(g.num_leaves());
    auto const l = static_cast<long>(edge_depths(g).left);
    CHECK(n == k + 2);
    CHECK(l == k + 1);
    CHECK(multiply(g, power(X0, k)).is_identity());
    // 1 < (k + 2) + k - 2k = 2
    CHECK(1 == n + k - 2 * (l - 1) - 1);
    Element h = power(X0, k);
    CHECK(multiply(invert(h), h).is_identity());
    CHECK(multiply(h, power(invert(X0), k)).is_identity());
    CHECK(static_cast<long>(edge_depths(h).right) == k + 1);
  }
}
