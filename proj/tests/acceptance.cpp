// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Randomized parts use fixed seeds.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "support.hpp"
#include "thompson/cayley.hpp"
#include "thompson/error.hpp"
#include "thompson/io.hpp"
#include "thompson/witness.hpp"

using namespace thompson;
using namespace testing;

namespace {

  struct Outcome {
    bool pass = false;
    std::string detail;
  };

  std::string str(Rational q) {
    std::ostringstream s;
    s << q;
    return s.str();
  }

  Element power(Element const& g, long k) {
    Element r;
    Element const step = k >= 0 ? g : invert(g);
    for (long i = 0; i < std::labs(k); ++i) {
      r = multiply(r, step);
    }
    return r;
  }

  // 1. Canonical forms under random dipole-removal orders.
  Outcome canonical_forms() {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<std::size_t> leaves(1, 12);
    std::uint64_t bad = 0;
    for (int t = 0; t < 100'000; ++t) {
      auto d = diagram(random_raw(rng, leaves(rng), Kind::V));
      Element const r = reduce(d);
      for (int k = 0; k < 5; ++k) {
        if (!(reduce_randomized(d, rng) == r)) {
          ++bad;
        }
      }
    }
    return {bad == 0, "100000 diagrams x 5 orders, " + std::to_string(bad) + " mismatches"};
  }

  // 2. Group axioms on values of random words over C.
  Outcome group_axioms() {
    std::mt19937_64 rng(102);
    std::uint64_t bad = 0;
    for (int t = 0; t < 10'000; ++t) {
      Element a = eval_word(random_word(rng, Alphabet::C, 12));
      Element b = eval_word(random_word(rng, Alphabet::C, 12));
      Element c = eval_word(random_word(rng, Alphabet::C, 12));
      bool ok = multiply(multiply(a, b), c) == multiply(a, multiply(b, c));
      ok = ok && multiply(Element(), a) == a && multiply(a, Element()) == a;
      ok = ok && multiply(a, invert(a)).is_identity() && multiply(invert(a), a).is_identity();
      bad += ok ? 0 : 1;
    }
    return {bad == 0, "10000 triples, " + std::to_string(bad) + " violations"};
  }

  // 3. One-step x0 lemmas and the power corollaries, checked literally.
  Outcome x0_lemmas() {
    std::mt19937_64 rng(103);
    Element const x0 = standard_generator(Generator::x0);
    Element const x0inv = invert(x0);
    std::uint64_t bad = 0, checks = 0;
    std::string first;
    std::set<std::string> violators;
    auto check = [&](bool ok, char const* what, Element const& g) {
      ++checks;
      if (!ok) {
        violators.insert(g.encode());
        if (bad++ == 0) {
          first = std::string(what) + " at " + serialize_element_inline(g);
        }
      }
    };
    int tested = 0;
    while (tested < 10'000) {
      Element g = random_element(rng, 12, static_cast<Kind>(tested % 3));
      if (g.num_leaves() < 4) {
        continue;
      }
      ++tested;
      auto const n = static_cast<long>(g.num_leaves());
      auto const [l0, l1] = edge_depths(g);
      for (int side = 0; side < 2; ++side) {
        bool const pos = side == 0;
        Element h = multiply(g, pos ? x0 : x0inv);
        auto const nh = static_cast<long>(h.num_leaves());
        auto const l = pos ? l0 : l1;
        auto const lh = pos ? edge_depths(h).left : edge_depths(h).right;
        check(nh >= n - 1 && nh <= n + 1, "one-step bounds", g);
        if (l == 1) {
          check(nh == n + 1 && lh == 1, "edge depth 1 case", g);
        } else {
          check((nh == n || nh == n - 1) && lh == l - 1, "edge depth > 1 case", g);
          bool const ext = pos ? g.range_strictly_extends(bw("1")) || g.range_strictly_extends(bw("01"))
                               : g.range_strictly_extends(bw("0")) || g.range_strictly_extends(bw("10"));
          if (ext) {
            check(nh == n && h.range_strictly_extends(bw(pos ? "1" : "0")), "extension case", g);
          }
        }
        bool const eq = pos ? g.range_strictly_extends(bw("1")) || g.range_strictly_extends(bw("01"))
                            : g.range_strictly_extends(bw("0")) || g.range_strictly_extends(bw("10"));
        Element p = g;
        auto const ll = static_cast<long>(l);
        for (long i = 0; i <= 20; ++i) {
          auto const np = static_cast<long>(p.num_leaves());
          check(np >= n + i - 2 * (ll - 1), "power lower bound", g);
          if (eq) {
            check(np == std::max(n, n + i - (ll - 1)), "power equality", g);
          }
          p = multiply(p, pos ? x0 : x0inv);
        }
      }
    }
    // how many violators are powers x0^k, |k| >= 2
    std::size_t powers = 0;
    for (auto const& key : violators) {
      Element const g = Element::decode(key);
      for (long k = 2; k <= 12; ++k) {
        if (g == power(x0, k) || g == power(x0, -k)) {
          ++powers;
          break;
        }
      }
    }
    return {bad == 0, "10000 elements, " + std::to_string(checks) + " checks, "
                          + std::to_string(bad) + " violations by " + std::to_string(violators.size())
                          + " elements, " + std::to_string(powers) + " of them powers of x0"
                          + (bad ? "; first: " + first : "")};
  }

  // 4. Interval copies at a branch.
  Outcome interval_copies() {
    std::mt19937_64 rng(104);
    std::uint64_t bad = 0;
    for (int t = 0; t < 10'000; ++t) {
      Element g = random_element(rng, 12, static_cast<Kind>(t % 3));
      Element h = random_element(rng, 10, Kind::F);
      auto const& pairs = g.pairs();
      BranchPair const br = pairs[rng() % pairs.size()];
      Element prod = multiply(g, copy_into_interval(h, br.range));
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
      bool const ok = prod.num_leaves() == g.num_leaves() + h.num_leaves() - 1
                      && prod.pairs() == expected;
      bad += ok ? 0 : 1;
    }
    return {bad == 0, "10000 triples, " + std::to_string(bad) + " violations"};
  }

  // 5. Generator cross-checks.
  Outcome generator_checks() {
    std::vector<std::string> failed;
    Element const x0 = standard_generator(Generator::x0);
    if (!(copy_into_interval(x0, bw("1")) == standard_generator(Generator::x1))) {
      failed.push_back("(x0)_[1] = x1");
    }
    for (long j = 0; j <= 30; ++j) {
      GroupWord w(Alphabet::A);
      w.push(Generator::x0, -j);
      w.push(Generator::x1, 1);
      w.push(Generator::x0, j);
      if (!(x_n(static_cast<std::uint64_t>(j + 1)) == eval_word_by_multiply(w))) {
        failed.push_back("x_" + std::to_string(j + 1));
      }
    }
    for (std::uint64_t r = 1; r <= 50; ++r) {
      if (x_n(r).num_leaves() != r + 3) {
        failed.push_back("N(x_" + std::to_string(r) + ")");
      }
    }
    Element const pi0 = standard_generator(Generator::pi0);
    if (!multiply(pi0, pi0).is_identity()) {
      failed.push_back("pi0^2");
    }
    if (classify(standard_generator(Generator::c1)) != Membership::T_only) {
      failed.push_back("classify(c1)");
    }
    if (classify(pi0) != Membership::V_only) {
      failed.push_back("classify(pi0)");
    }
    std::string detail = failed.empty() ? "all identities hold" : "failed:";
    for (auto const& f : failed) {
      detail += " " + f;
    }
    return {failed.empty(), detail};
  }

  // 6. Ball constants and |eval w| <= ||w||.
  Outcome oracle_consistency() {
    auto ball = cached_ball(Alphabet::A, 8);
    auto e8 = estimate_constants(Alphabet::A, 8);
    std::uint64_t bad = 0;
    for (std::uint32_t id = 1; id < ball->size() && ball->distance(id) <= 8; ++id) {
      Rational const d(ball->distance(id)), n(ball->num_leaves(id));
      if (!(e8.c_hat * n <= d && d <= e8.C_hat * n)) {
        ++bad;
      }
    }
    std::mt19937_64 rng(106);
    std::uint64_t words_bad = 0;
    for (int t = 0; t < 10'000; ++t) {
      GroupWord w = random_word(rng, Alphabet::A, 12);
      auto len = word_length(eval_word(w), Alphabet::A, static_cast<unsigned>(w.length()));
      if (!len) {
        ++words_bad;
      }
    }
    std::string detail;
    bool monotone = true;
    Rational lo(1000), hi(0);
    for (unsigned r : {6u, 7u, 8u}) {
      auto e = r == 8 ? e8 : estimate_constants(Alphabet::A, r);
      monotone = monotone && e.c_hat <= lo && e.C_hat >= hi;
      lo = e.c_hat;
      hi = e.C_hat;
      detail += "r=" + std::to_string(r) + " c_hat=" + str(e.c_hat) + " C_hat=" + str(e.C_hat) + "; ";
    }
    detail += std::to_string(bad) + " ball violations, " + std::to_string(words_bad)
              + " word violations, widening " + (monotone ? "monotone" : "NOT monotone");
    return {bad == 0 && words_bad == 0 && monotone, detail};
  }

  // 7. Scaled witnesses for every g in ball_C(4) with N(g) >= 4.
  std::optional<PathCertificate> sample_certificate;

  Outcome scaled_witnesses() {
    auto ball = cached_ball(Alphabet::C, 4);
    auto const k = WitnessConstants::scaled();
    char const* const required[] = {"endpoint",      "target",         "fixes-interval",
                                    "w4.commute",  "w1.leaves",    "w4.prefixes"};
    std::uint64_t count = 0, bad = 0;
    std::string first;
    for (std::uint32_t id = 0; id < ball->size() && ball->distance(id) <= 4; ++id) {
      if (ball->num_leaves(id) < 4) {
        continue;
      }
      ++count;
      WitnessOptions opt;
      opt.lambda = ball->distance(id);
      std::string problem;
      try {
        auto cert = witness(ball->element(id), k, Alphabet::C, opt);
        auto report = verify(cert, VerifyMode::lemmas);
        for (char const* name : required) {
          auto const* c = report.find(name);
          if (c == nullptr || c->status != CheckStatus::pass) {
            problem = std::string(name) + " not passed";
          }
        }
        if (!report.passed() && problem.empty()) {
          for (auto const& c : report.checks) {
            if (c.status == CheckStatus::fail) {
              problem = c.name + " failed: " + c.detail;
              break;
            }
          }
        }
        if (problem.empty() && !sample_certificate && cert.lambda >= 3) {
          sample_certificate = cert;
        }
      } catch (Error const& e) {
        problem = e.what();
      }
      if (!problem.empty() && bad++ == 0) {
        first = serialize_element_inline(ball->element(id)) + ": " + problem;
      }
    }
    return {bad == 0 && count > 0, std::to_string(count) + " elements, " + std::to_string(bad)
                                       + " failing" + (bad ? "; first: " + first : "")};
  }

  // 8. Avoidance on sphere_A(3) and exact distances along one certificate.
  Outcome tiny_avoidance() {
    auto ball = cached_ball(Alphabet::A, 3);
    auto [lo, hi] = ball->sphere(3);
    std::uint64_t pairs = 0, infinite = 0, longest = 0;
    for (auto a = lo; a < hi; ++a) {
      for (auto b = a + 1; b < hi; ++b) {
        ++pairs;
        auto d = avoidant_distance(ball->element(a), ball->element(b), 0, Alphabet::A, 40);
        if (!d) {
          ++infinite;
        } else {
          longest = std::max(longest, *d);
        }
      }
    }
    std::string detail = std::to_string(pairs) + " pairs, " + std::to_string(infinite)
                         + " without a path within 40, longest " + std::to_string(longest);
    bool exact_ok = false;
    if (sample_certificate) {
      VerifyOptions v;
      v.bfs_cap = 10;
      auto report = verify(*sample_certificate, VerifyMode::exact, v);
      auto const* c = report.find("exact");
      exact_ok = report.passed() && c != nullptr && c->status == CheckStatus::pass;
      detail += "; certificate of " + serialize_element_inline(sample_certificate->base)
                + " (length " + std::to_string(sample_certificate->length()) + "): "
                + (c ? c->detail : "no exact check");
    } else {
      detail += "; no certificate from criterion 7";
    }
    return {infinite == 0 && exact_ok, detail};
  }

  // 9. Strict constants on five elements.
  std::vector<PathCertificate> strict_certificates;

  Outcome strict_run() {
    auto e = estimate_constants(Alphabet::A, 8);
    auto const k = WitnessConstants::strict_from(e.c_hat, e.C_hat);
    auto ball = cached_ball(Alphabet::A, 6);
    std::vector<Element> chosen;
    // spread the choice over distances 2..6
    for (unsigned r = 2; r <= 6 && chosen.size() < 5; ++r) {
      auto [lo, hi] = ball->sphere(r);
      for (auto id = lo; id < hi; ++id) {
        auto const n = ball->num_leaves(id);
        if (n >= 4 && n <= 6) {
          chosen.push_back(ball->element(id));
          break;
        }
      }
    }
    std::string detail = "c=" + str(k.c) + " C=" + str(k.C) + " M=" + std::to_string(k.M)
                         + " Q=" + std::to_string(k.Q);
    bool ok = chosen.size() == 5 && k.strict;
    for (auto const& g : chosen) {
      WitnessOptions opt;
      opt.bfs_cap = 6;
      opt.audit_every = 512;
      auto cert = witness(g, k, Alphabet::A, opt);
      bool const exact = cert.lambda_source == LambdaSource::exact && cert.lambda <= 6;
      auto lem = verify(cert, VerifyMode::lemmas);
      auto lb = verify(cert, VerifyMode::leafbound);
      auto status = [&](VerificationReport const& r, char const* n) {
        auto const* c = r.find(n);
        return c != nullptr && c->status == CheckStatus::pass;
      };
      bool const this_ok = exact && status(lem, "endpoint") && status(lem, "length")
                           && status(lem, "w4.commute") && status(lb, "leafbound")
                           && status(lb, "audits") && cert.audit_failures == 0 && cert.audits > 0
                           && lem.passed() && lb.passed();
      ok = ok && this_ok;
      detail += "; N=" + std::to_string(g.num_leaves()) + " lambda=" + std::to_string(cert.lambda)
                + " ||w||=" + std::to_string(cert.length()) + " audits=" + std::to_string(cert.audits)
                + (this_ok ? "" : " FAILED");
      strict_certificates.push_back(std::move(cert));
    }
    return {ok, detail};
  }

  // 10. Connectors between the strict certificates.
  Outcome connectors() {
    if (strict_certificates.size() < 2) {
      return {false, "criterion 9 produced no certificates"};
    }
    auto const k = strict_certificates.front().constants;
    std::uint64_t pairs = 0, bad = 0, prefixes = 0;
    for (std::size_t i = 0; i < strict_certificates.size(); ++i) {
      for (std::size_t j = i + 1; j < strict_certificates.size(); ++j) {
        auto const* a = &strict_certificates[i];
        auto const* b = &strict_certificates[j];
        if (a->lambda > b->lambda) {
          std::swap(a, b);  // lambda1 <= lambda2
        }
        ++pairs;
        WitnessOptions opt;
        opt.bfs_cap = 6;
        auto c = connect(a->base, b->base, k, Alphabet::A, opt, a, b);
        GroupWord const& p = c.segments.at(5).word;
        std::uint64_t const floor_n = k.Q * a->lambda;
        Element const start = standard_end(k.Q * a->lambda);
        bool ok = start.num_leaves() > floor_n;
        WordEvaluator ev(start, 512);
        ev.run(p, [&](std::uint64_t, std::uint64_t n) { ok = ok && n > floor_n; });
        prefixes += p.length() + 1;
        ok = ok && ev.audit_failures() == 0 && ev.element() == standard_end(k.Q * b->lambda)
             && eval_word_from(a->base, c.word()) == b->base;
        bad += ok ? 0 : 1;
      }
    }
    return {bad == 0, std::to_string(pairs) + " pairs, " + std::to_string(prefixes)
                          + " connector prefixes counted exactly, " + std::to_string(bad)
                          + " failing"};
  }

  // 11. Divergence profile over A.
  Outcome divergence() {
    auto rows = divergence_profile(Alphabet::A, 6, 40);
    bool ok = rows.size() == 6;
    std::string detail;
    for (auto const& r : rows) {
      double const ratio = static_cast<double>(r.div) / r.n;
      ok = ok && !r.lower_bound && r.certified && ratio <= 20.0;
      std::ostringstream s;
      s << "n=" << r.n << " div=" << r.div << (r.certified ? "" : "(upper)") << " ratio="
        << ratio << "; ";
      detail += s.str();
    }
    return {ok, detail};
  }

}  // namespace

int main() {
  struct Criterion {
    int number;
    char const* title;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "canonical forms", canonical_forms},
      {2, "group axioms", group_axioms},
      {3, "x0 multiplication lemmas and corollaries", x0_lemmas},
      {4, "interval copies", interval_copies},
      {5, "generator cross-checks", generator_checks},
      {6, "oracle consistency", oracle_consistency},
      {7, "scaled witnesses on ball_C(4)", scaled_witnesses},
      {8, "exact avoidance at tiny scale", tiny_avoidance},
      {9, "strict-mode structural run", strict_run},
      {10, "connectors", connectors},
      {11, "divergence profile", divergence},
  };
  bool all = true;
  for (auto const& c : criteria) {
    auto const t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    all = all && o.pass;
    std::ostringstream t;
    t.precision(1);
    t << std::fixed << secs;
    std::cout << "criterion " << c.number << " " << (o.pass ? "PASS" : "FAIL") << " ["
              << c.title << ", " << t.str() << " s] " << o.detail << std::endl;
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
