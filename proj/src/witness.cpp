#include "thompson/witness.hpp"

#include <algorithm>
#include <sstream>

#include "thompson/cayley.hpp"
#include "thompson/error.hpp"

namespace thompson {

  namespace {

    std::uint64_t ceil_of(Rational q) {
      auto n = q.numerator(), d = q.denominator();
      return static_cast<std::uint64_t>((n + d - 1) / d);
    }

    std::string show(Rational q) {
      std::ostringstream out;
      out << q.numerator();
      if (q.denominator() != 1) {
        out << '/' << q.denominator();
      }
      return out.str();
    }

    std::int64_t as_int(std::uint64_t x) {
      return static_cast<std::int64_t>(x);
    }

    BinaryWord zeros(std::uint64_t n) {
      return BinaryWord::repeat(false, n);
    }

    GroupWord w1_word() {
      return parse_word("x0^2 x1^-1 x0^-1", Alphabet::A);
    }

    GroupWord w2_word(std::uint64_t m) {
      GroupWord w(Alphabet::A);
      w.push(Generator::x0, -as_int(m));
      w.push(Generator::x1, 1);
      w.push(Generator::x0, as_int(m));
      return w;
    }

    GroupWord w4_word(std::uint64_t a) {
      GroupWord w(Alphabet::A);
      w.push(Generator::x0, as_int(a));
      w.push(Generator::x1, -1);
      w.push(Generator::x0, -as_int(a) + 1);
      return w;
    }

    Alphabet closing_alphabet(Alphabet a) {
      return std::min(a, Alphabet::B);
    }

    struct Recording {
      std::vector<Evidence> evidence;
      std::uint64_t stride = 1;
      std::uint64_t audits = 0;
      std::uint64_t failures = 0;
      Element end;
    };

    Recording record(Element const& base, std::vector<Segment> const& segments,
                     std::uint64_t limit, std::uint64_t audit_every) {
      Recording r;
      std::uint64_t total = 0;
      std::vector<std::uint64_t> bounds{0};
      for (auto const& s : segments) {
        total += s.word.length();
        bounds.push_back(total);
      }
      r.stride = total <= limit ? 1 : (total + limit - 1) / limit;
      WordEvaluator ev(base, audit_every);
      r.evidence.push_back({0, base.num_leaves(), std::nullopt});
      std::size_t next_bound = 1;
      for (auto const& s : segments) {
        ev.run(s.word, [&](std::uint64_t i, std::uint64_t n) {
          while (next_bound < bounds.size() && bounds[next_bound] < i) {
            ++next_bound;
          }
          bool const at_bound = next_bound < bounds.size() && bounds[next_bound] == i;
          if (i % r.stride == 0 || at_bound || i == total) {
            r.evidence.push_back({i, n, std::nullopt});
          }
        });
      }
      ev.audit();
      r.audits = ev.audits();
      r.failures = ev.audit_failures();
      r.end = ev.element();
      return r;
    }

    void require_size(Element const& g, char const* what) {
      if (g.num_leaves() < 4) {
        throw Error(ErrorKind::TooSmall, std::string(what) + " has "
                                             + std::to_string(g.num_leaves())
                                             + " leaves; at least 4 are needed");
      }
    }

    void require_group(Element const& g, Alphabet a) {
      Membership const m = classify(g);
      if ((a == Alphabet::A && m != Membership::F) || (a == Alphabet::B && m == Membership::V_only)) {
        throw Error(ErrorKind::NotInGroup, "element is " + std::string(name(m))
                                               + ", outside the group of alphabet "
                                               + std::string(name(a)));
      }
    }

  }  // namespace

  WitnessConstants WitnessConstants::custom(Rational c, Rational C, std::uint64_t M,
                                            std::uint64_t Q) {
    if (c <= 0 || C <= 0 || M == 0 || Q == 0) {
      throw Error(ErrorKind::FormatError, "constants must be positive");
    }
    WitnessConstants k;
    k.c = c;
    k.C = C;
    k.M = M;
    k.Q = Q;
    k.delta = c / Rational(as_int(8 * M));
    k.D = Rational(as_int(8 * M)) / c + Rational(as_int(3 * Q));
    k.strict = k.satisfies_strict();
    return k;
  }

  WitnessConstants WitnessConstants::strict_from(Rational c, Rational C) {
    std::uint64_t const M = ceil_of(Rational(100) * C / c);
    std::uint64_t const Q = ceil_of(Rational(as_int(10 * M)) / (c * c));
    return custom(c, C, M, Q);
  }

  WitnessConstants WitnessConstants::scaled() {
    return custom(Rational(1, 4), Rational(3), 4, 8);
  }

  bool WitnessConstants::satisfies_strict() const {
    return Rational(as_int(M)) >= Rational(100) * C / c
           && Rational(as_int(Q)) >= Rational(as_int(10 * M)) / (c * c)
           && delta == c / Rational(as_int(8 * M))
           && D == Rational(as_int(8 * M)) / c + Rational(as_int(3 * Q));
  }

  std::string_view name(LambdaSource s) noexcept {
    return s == LambdaSource::exact ? "exact" : "surrogate";
  }

  std::uint64_t PathCertificate::length() const {
    std::uint64_t n = 0;
    for (auto const& s : segments) {
      n += s.word.length();
    }
    return n;
  }

  GroupWord PathCertificate::word() const {
    GroupWord w(alphabet);
    for (auto const& s : segments) {
      w.append(s.word);
    }
    return w;
  }

  std::vector<std::uint64_t> PathCertificate::boundaries() const {
    std::vector<std::uint64_t> out{0};
    for (auto const& s : segments) {
      out.push_back(out.back() + s.word.length());
    }
    return out;
  }

  Element standard_end(std::uint64_t a) {
    if (a < 2) {
      throw Error(ErrorKind::ConstantsTooSmall, "the end point needs an exponent of at least 2");
    }
    return copy_into_interval(standard_generator(Generator::x0), zeros(a - 1));
  }

  Step step_w1(Element const& g) {
    require_size(g, "g");
    if (!g.has_range_branch(zeros(1))) {
      return {GroupWord(Alphabet::A), g};
    }
    GroupWord w = w1_word();
    return {w, multiply(g, copy_into_interval(standard_generator(Generator::x0), zeros(1)))};
  }

  Step step_w2(Element const& g1, WitnessConstants const& k) {
    std::uint64_t const m = k.M * g1.num_leaves();
    return {w2_word(m), multiply(g1, x_n(m + 1))};
  }

  Element closing_element(Element const& g1) {
    auto const perm = leaf_permutation(g1);
    std::size_t const n = perm.size();
    std::size_t const k = perm[0];
    auto ran = g1.range_branches();
    std::sort(ran.begin(), ran.end());
    std::vector<BranchPair> pairs;
    pairs.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
      pairs.push_back({ran[j], g1.pairs()[(j + n - k) % n].domain});
    }
    return reduce(TreeDiagram::from_pairs(std::move(pairs)));
  }

  Step step_w3(Element const& g1, Element const& g2, Alphabet alphabet, unsigned bfs_cap,
               SynthesisPath* path) {
    Element const h = closing_element(g1);
    auto s = synthesize_word(h, closing_alphabet(alphabet), bfs_cap);
    if (path != nullptr) {
      *path = s.path;
    }
    return {std::move(s.word), multiply(g2, h)};
  }

  Step step_w4(Element const& g3, std::uint64_t lambda, WitnessConstants const& k) {
    std::uint64_t const a = k.Q * lambda;
    auto const l0 = edge_depths(g3).left;
    if (a < 3 || a - 2 <= l0) {
      throw Error(ErrorKind::ConstantsTooSmall,
                  "Q lambda - 2 = " + std::to_string(a) + " - 2 does not exceed l0(g3) = "
                      + std::to_string(l0));
    }
    return {w4_word(a), multiply(g3, standard_end(a))};
  }

  Step step_w5(Element const& g3, Element const& g4, Alphabet alphabet, unsigned bfs_cap,
               SynthesisPath* path) {
    Element const inv = invert(g3);
    auto s = synthesize_word(inv, alphabet, bfs_cap);
    if (path != nullptr) {
      *path = s.path;
    }
    return {std::move(s.word), multiply(g4, inv)};
  }

  std::pair<std::uint64_t, LambdaSource> lambda_for(Element const& g, Alphabet alphabet,
                                                    unsigned bfs_cap, WitnessConstants const& k) {
    if (auto len = word_length(g, alphabet, bfs_cap)) {
      return {*len, LambdaSource::exact};
    }
    return {ceil_of(k.C * Rational(as_int(g.num_leaves()))), LambdaSource::surrogate};
  }

  PathCertificate witness(Element const& g, WitnessConstants const& k, Alphabet alphabet,
                          WitnessOptions const& opt) {
    require_size(g, "g");
    require_group(g, alphabet);
    PathCertificate cert;
    cert.kind = CertificateKind::witness;
    cert.alphabet = alphabet;
    cert.base = g;
    cert.constants = k;
    if (opt.lambda) {
      cert.lambda = *opt.lambda;
      cert.lambda_source = LambdaSource::surrogate;
      if (auto len = word_length(g, alphabet, opt.bfs_cap); len && *len == *opt.lambda) {
        cert.lambda_source = LambdaSource::exact;
      }
    } else {
      std::tie(cert.lambda, cert.lambda_source) = lambda_for(g, alphabet, opt.bfs_cap, k);
    }
    auto s1 = step_w1(g);
    auto s2 = step_w2(s1.next, k);
    SynthesisPath p3{}, p5{};
    auto s3 = step_w3(s1.next, s2.next, alphabet, opt.bfs_cap, &p3);
    auto s4 = step_w4(s3.next, cert.lambda, k);
    auto s5 = step_w5(s3.next, s4.next, alphabet, opt.bfs_cap, &p5);
    cert.segments = {{"w1", s1.word, "defined"},
                     {"w2", s2.word, "defined"},
                     {"w3", s3.word, std::string(name(p3))},
                     {"w4", s4.word, "defined"},
                     {"w5", s5.word, std::string(name(p5))}};
    for (auto& s : cert.segments) {
      s.word.set_alphabet(alphabet);
    }
    cert.target = s5.next;
    auto rec = record(g, cert.segments, opt.evidence_limit, opt.audit_every);
    if (!(rec.end == cert.target) || !(cert.target == standard_end(k.Q * cert.lambda))) {
      throw Error(ErrorKind::SynthesisFailure, "witness path does not end at the standard element");
    }
    cert.stride = rec.stride;
    cert.evidence = std::move(rec.evidence);
    cert.audits = rec.audits;
    cert.audit_failures = rec.failures;
    return cert;
  }

  GroupWord connector(std::uint64_t Q, std::uint64_t l1, std::uint64_t l2) {
    if (l1 > l2) {
      return connector(Q, l2, l1).inverse();
    }
    GroupWord w(Alphabet::A);
    w.push(Generator::x0, as_int(Q * l1) - 1);
    w.push(Generator::x1, 1);
    w.push(Generator::x0, as_int(Q * (l2 - l1)));
    w.push(Generator::x1, -1);
    w.push(Generator::x0, -as_int(Q * l2) + 1);
    return w;
  }

  PathCertificate connect(Element const& g1, Element const& g2, WitnessConstants const& k,
                          Alphabet alphabet, WitnessOptions const& opt,
                          PathCertificate const* w1, PathCertificate const* w2) {
    require_size(g1, "g1");
    require_size(g2, "g2");
    std::optional<PathCertificate> own1, own2;
    if (w1 == nullptr || !(w1->base == g1) || w1->kind != CertificateKind::witness) {
      own1 = witness(g1, k, alphabet, opt);
      w1 = &*own1;
    }
    if (w2 == nullptr || !(w2->base == g2) || w2->kind != CertificateKind::witness) {
      own2 = witness(g2, k, alphabet, opt);
      w2 = &*own2;
    }
    PathCertificate cert;
    cert.kind = CertificateKind::connection;
    cert.alphabet = alphabet;
    cert.base = g1;
    cert.target = g2;
    cert.constants = k;
    cert.lambda = w1->lambda;
    cert.lambda_source = w1->lambda_source;
    cert.lambda_end = w2->lambda;
    cert.lambda_end_source = w2->lambda_source;
    for (auto const& s : w1->segments) {
      cert.segments.push_back(s);
    }
    GroupWord p = connector(k.Q, w1->lambda, w2->lambda);
    p.set_alphabet(alphabet);
    cert.segments.push_back({"p", p, "defined"});
    for (auto it = w2->segments.rbegin(); it != w2->segments.rend(); ++it) {
      cert.segments.push_back({it->label + "inv", it->word.inverse(), it->origin});
    }
    // Evidence: the first witness as recorded, the connector at the common
    // stride, and the second witness read backwards.
    std::uint64_t const l1 = w1->length(), lp = p.length(), l2 = w2->length();
    std::uint64_t const total = l1 + lp + l2;
    cert.stride = total <= opt.evidence_limit ? 1 : (total + opt.evidence_limit - 1)
                                                        / opt.evidence_limit;
    cert.evidence = w1->evidence;
    WordEvaluator ev(w1->target, opt.audit_every);
    ev.run(p, [&](std::uint64_t i, std::uint64_t n) {
      if (i % cert.stride == 0 || i == lp) {
        cert.evidence.push_back({l1 + i, n, std::nullopt});
      }
    });
    ev.audit();
    if (!(ev.element() == w2->target)) {
      throw Error(ErrorKind::SynthesisFailure, "connector does not join the two end points");
    }
    for (auto it = w2->evidence.rbegin(); it != w2->evidence.rend(); ++it) {
      if (it->index == l2) {
        continue;  // same vertex as the connector's end
      }
      cert.evidence.push_back({l1 + lp + (l2 - it->index), it->leaves, it->distance});
    }
    cert.audits = w1->audits + w2->audits + ev.audits();
    cert.audit_failures = w1->audit_failures + w2->audit_failures + ev.audit_failures();
    return cert;
  }

  // ---------------------------------------------------------------- verify

  VerifyMode parse_verify_mode(std::string_view s) {
    if (s == "exact") {
      return VerifyMode::exact;
    }
    if (s == "leafbound") {
      return VerifyMode::leafbound;
    }
    if (s == "lemmas") {
      return VerifyMode::lemmas;
    }
    throw Error(ErrorKind::FormatError, "unknown mode \"" + std::string(s) + "\"");
  }

  std::string_view name(VerifyMode m) noexcept {
    switch (m) {
      case VerifyMode::exact:
        return "exact";
      case VerifyMode::leafbound:
        return "leafbound";
      case VerifyMode::lemmas:
        return "lemmas";
    }
    return "?";
  }

  std::string_view name(CheckStatus s) noexcept {
    switch (s) {
      case CheckStatus::pass:
        return "pass";
      case CheckStatus::fail:
        return "FAIL";
      case CheckStatus::skipped:
        return "skipped";
    }
    return "?";
  }

  bool VerificationReport::passed() const {
    return std::none_of(checks.begin(), checks.end(),
                        [](Check const& c) { return c.status == CheckStatus::fail; });
  }

  Check const* VerificationReport::find(std::string_view n) const {
    for (auto const& c : checks) {
      if (c.name == n) {
        return &c;
      }
    }
    return nullptr;
  }

  std::string VerificationReport::to_text() const {
    std::string out = "mode " + std::string(name(mode)) + "\n";
    for (auto const& c : checks) {
      out += std::string(name(c.status)) + " " + c.name;
      if (!c.detail.empty()) {
        out += ": " + c.detail;
      }
      out += "\n";
    }
    out += passed() ? "result pass\n" : "result FAIL\n";
    return out;
  }

  namespace {

    class Reporter {
     public:
      explicit Reporter(VerificationReport& r, std::string prefix = "")
          : _r(r), _prefix(std::move(prefix)) {}

      void check(std::string const& n, bool ok, std::string detail = "") {
        _r.checks.push_back({_prefix + n, ok ? CheckStatus::pass : CheckStatus::fail,
                             std::move(detail)});
      }
      void skip(std::string const& n, std::string detail) {
        _r.checks.push_back({_prefix + n, CheckStatus::skipped, std::move(detail)});
      }
      // Fails only under strict constants; a miss under scaled constants is
      // reported as skipped with the numbers.
      void strict_check(std::string const& n, bool strict, bool ok, std::string detail) {
        if (ok || strict) {
          check(n, ok, std::move(detail));
        } else {
          skip(n, "scaled constants; " + detail);
        }
      }

     private:
      VerificationReport& _r;
      std::string _prefix;
    };

    // Minimum over all prefixes w' of `w` (including empty and full) of
    // f(||w'||, N(start w')), reported as the first violation.
    template <typename Pred>
    std::optional<std::string> every_prefix(Element const& start, GroupWord const& w,
                                            std::uint64_t audit_every, Pred ok) {
      if (!ok(std::uint64_t(0), std::uint64_t(start.num_leaves()))) {
        return "fails at the empty prefix (N = " + std::to_string(start.num_leaves()) + ")";
      }
      std::optional<std::string> bad;
      WordEvaluator ev(start, audit_every);
      ev.run(w, [&](std::uint64_t i, std::uint64_t n) {
        if (!bad && !ok(i, n)) {
          bad = "fails after " + std::to_string(i) + " letters (N = " + std::to_string(n) + ")";
        }
      });
      if (!bad && ev.audit_failures() != 0) {
        bad = "evaluator audit failed: " + ev.first_failure();
      }
      return bad;
    }

    bool equal_words(GroupWord const& a, GroupWord const& b) {
      return a.letters() == b.letters();
    }

    void witness_lemmas(Reporter& rep, Element const& g, std::vector<Segment> const& seg,
                        WitnessConstants const& k, std::uint64_t lambda, Alphabet alphabet,
                        std::uint64_t audit_every) {
      bool const strict = k.strict;
      bool labels = seg.size() == 5;
      for (std::size_t i = 0; labels && i < 5; ++i) {
        labels = seg[i].label == "w" + std::to_string(i + 1);
      }
      rep.check("segments", labels, std::to_string(seg.size()) + " segments");
      if (!labels) {
        return;
      }
      std::uint64_t const N = g.num_leaves();
      rep.check("size", N >= 4, "N(g) = " + std::to_string(N));
      // w1
      bool const zero_branch = g.has_range_branch(zeros(1));
      rep.check("w1.form", equal_words(seg[0].word, zero_branch ? w1_word() : GroupWord()),
                zero_branch ? "0 is a range branch of g" : "0 is not a range branch of g");
      Element const g1 = eval_word_from(g, seg[0].word);
      std::uint64_t const N1 = g1.num_leaves();
      rep.check("w1.no-zero-branch", !g1.has_range_branch(zeros(1)));
      rep.check("w1.leaves", N1 <= N + 2,
                "N(g1) = " + std::to_string(N1) + ", N(g) + 2 = " + std::to_string(N + 2));
      auto bad = every_prefix(g, seg[0].word, audit_every,
                              [&](std::uint64_t, std::uint64_t n) { return n >= N; });
      rep.check("w1.prefixes", !bad, bad.value_or("N(g w') >= N(g) for every prefix"));
      // w2
      std::uint64_t const m = k.M * N1;
      rep.check("w2.form", equal_words(seg[1].word, w2_word(m)),
                "M N(g1) = " + std::to_string(m));
      Element const g2 = eval_word_from(g1, seg[1].word);
      rep.check("w2.element", g2 == multiply(g1, x_n(m + 1)), "w2 = x_" + std::to_string(m + 1));
      std::uint64_t const N2 = g2.num_leaves();
      auto const l1 = edge_depths(g1).right;
      rep.check("w2.growth", N2 >= k.M * N1,
                "N(g2) = " + std::to_string(N2) + ", M N(g1) = " + std::to_string(k.M * N1));
      rep.check("w2.formula", N2 == N1 + k.M * N1 + 3 - l1,
                "N(g1) + M N(g1) + 3 - l1(g1) = " + std::to_string(N1 + k.M * N1 + 3 - l1));
      bad = every_prefix(g1, seg[1].word, audit_every,
                         [&](std::uint64_t, std::uint64_t n) { return n >= N1; });
      rep.check("w2.prefixes", !bad, bad.value_or("N(g1 w') >= N(g1) for every prefix"));
      // w3
      Element const h = closing_element(g1);
      rep.check("w3.element", eval_word(seg[2].word) == h, "w3 evaluates to the closing element");
      bool in_closing = true;
      for (auto const& l : seg[2].word.letters()) {
        in_closing = in_closing && contains(closing_alphabet(alphabet), l.base);
      }
      rep.check("w3.alphabet", in_closing,
                "letters from " + std::string(name(closing_alphabet(alphabet))));
      Element const g3 = multiply(g2, h);
      std::uint64_t const N3 = g3.num_leaves();
      Rational const bound3 = k.C * Rational(as_int(N1));
      rep.strict_check("w3.length", strict && seg[2].origin == "geodesic",
                       Rational(as_int(seg[2].word.length())) <= bound3,
                       "||w3|| = " + std::to_string(seg[2].word.length()) + ", C N(g1) = "
                           + show(bound3) + " (" + seg[2].origin + ")");
      rep.check("w3.growth", N3 + N1 >= k.M * N1,
                "N(g3) = " + std::to_string(N3) + ", (M-1) N(g1) = "
                    + std::to_string((k.M - 1) * N1));
      auto const l0 = edge_depths(g3).left;
      rep.check("w3.edge", l0 <= N1,
                "l0(g3) = " + std::to_string(l0) + ", N(g1) = " + std::to_string(N1));
      bool has_branch = false;
      for (auto const& p : g3.pairs()) {
        if (p.domain == zeros(l0) && p.range == zeros(l0)) {
          has_branch = true;
        }
      }
      rep.check("w3.fixed-branch", has_branch,
                "0^" + std::to_string(l0) + " -> 0^" + std::to_string(l0));
      rep.check("fixes-interval", fixes_interval_pointwise(g3, zeros(l0)),
                "g3 fixes [0^" + std::to_string(l0) + "]");
      // w4
      std::uint64_t const a = k.Q * lambda;
      rep.check("w4.form", equal_words(seg[3].word, w4_word(a)), "Q lambda = " + std::to_string(a));
      bool const qineq = a >= 3 && l0 < a - 2;
      rep.check("Qineq", qineq, "l0(g3) = " + std::to_string(l0) + ", Q lambda - 2 = "
                                     + std::to_string(a >= 2 ? a - 2 : 0));
      Element const w4 = standard_end(a);
      rep.check("w4.element", eval_word(seg[3].word) == w4, "supported in [0^" + std::to_string(a - 1) + "]");
      rep.check("w4.commute", multiply(g3, w4) == multiply(w4, g3));
      // 2 N(g3 w') >= 2 N(g3) + ||w'|| - 4 N(g1)
      bad = every_prefix(g3, seg[3].word, audit_every, [&](std::uint64_t i, std::uint64_t n) {
        return 2 * n + 4 * N1 >= 2 * N3 + i;
      });
      rep.check("w4.prefixes", !bad,
                bad.value_or("N(g3 w') >= N(g3) + ||w'||/2 - 2 N(g1) for every prefix"));
      Element const g4 = multiply(g3, w4);
      rep.check("w4.growth", g4.num_leaves() >= a,
                "N(g4) = " + std::to_string(g4.num_leaves()) + ", Q lambda = " + std::to_string(a));
      // w5
      rep.check("w5.element", eval_word(seg[4].word) == invert(g3), "w5 evaluates to g3^-1");
      Element const g5 = multiply(g4, invert(g3));
      rep.check("g5", g5 == w4, "g5 = g3 w4 g3^-1 = w4");
      std::uint64_t len = 0;
      for (auto const& s : seg) {
        len += s.word.length();
      }
      Rational const dl = k.D * Rational(as_int(lambda));
      rep.strict_check("length", strict, Rational(as_int(len)) <= dl,
                       "||w|| = " + std::to_string(len) + ", D lambda = " + show(dl));
    }

  }  // namespace

  VerificationReport verify(PathCertificate const& cert, VerifyMode mode, VerifyOptions const& opt) {
    VerificationReport report;
    report.mode = mode;
    Reporter rep(report);
    auto const& k = cert.constants;
    bool const connection = cert.kind == CertificateKind::connection;
    std::uint64_t const lambda_min =
        connection ? std::min(cert.lambda, cert.lambda_end) : cert.lambda;
    rep.check("constants", !k.strict || k.satisfies_strict(),
              std::string(k.strict ? "strict" : "scaled") + " c=" + show(k.c) + " C=" + show(k.C)
                  + " M=" + std::to_string(k.M) + " Q=" + std::to_string(k.Q)
                  + " delta=" + show(k.delta) + " D=" + show(k.D));

    // Walk the whole path once: endpoint, recorded N values, and the
    // elements needed for exact distances.
    std::vector<Evidence> const& ev = cert.evidence;
    std::size_t next = 0;
    std::uint64_t mismatches = 0;
    std::string first_mismatch;
    Rational worst;
    bool worst_set = false;
    std::uint64_t worst_index = 0;
    Rational const threshold = k.delta * Rational(as_int(lambda_min));
    std::uint64_t exact_fail = 0, beyond_cap = 0;
    std::string exact_first;
    std::uint64_t min_distance = UINT64_MAX;
    auto on_record = [&](std::uint64_t i, std::uint64_t n, WordEvaluator const* e,
                         Element const* start) {
      // every prefix counts here, recorded or not; the identity has
      // distance 0 whatever its leaf count says
      if (mode == VerifyMode::leafbound) {
        Rational q = n == 1 ? Rational(0) : k.c * Rational(as_int(n));
        if (!worst_set || q < worst) {
          worst = q;
          worst_set = true;
          worst_index = i;
        }
      }
      while (next < ev.size() && ev[next].index < i) {
        ++next;
      }
      if (next >= ev.size() || ev[next].index != i) {
        return;
      }
      if (ev[next].leaves != n) {
        if (mismatches++ == 0) {
          first_mismatch = "index " + std::to_string(i) + ": recorded "
                           + std::to_string(ev[next].leaves) + ", actual " + std::to_string(n);
        }
      }
      if (mode == VerifyMode::exact) {
        Element const x = e != nullptr ? e->element() : *start;
        auto d = word_length(x, cert.alphabet, opt.bfs_cap);
        if (d) {
          min_distance = std::min<std::uint64_t>(min_distance, *d);
        } else {
          ++beyond_cap;
        }
        bool const ok = d ? Rational(as_int(*d)) > threshold
                          : Rational(as_int(opt.bfs_cap) + 1) > threshold;
        if (!ok && exact_fail++ == 0) {
          exact_first = "index " + std::to_string(i) + ": |g w'| = "
                        + (d ? std::to_string(*d) : "> " + std::to_string(opt.bfs_cap));
        }
      }
    };
    on_record(0, cert.base.num_leaves(), nullptr, &cert.base);
    WordEvaluator walker(cert.base, opt.audit_every);
    for (auto const& s : cert.segments) {
      walker.run(s.word, [&](std::uint64_t i, std::uint64_t n) { on_record(i, n, &walker, nullptr); });
    }
    walker.audit();
    Element const end = walker.element();
    rep.check("endpoint", end == cert.target, "base * w = target");
    if (!connection) {
      rep.check("target", cert.target == standard_end(k.Q * cert.lambda),
                "target = x0^" + std::to_string(k.Q * cert.lambda) + " x1^-1 x0^-"
                    + std::to_string(k.Q * cert.lambda - 1));
    }
    rep.check("evidence", mismatches == 0 && !ev.empty(),
              mismatches == 0 ? std::to_string(ev.size()) + " records, stride "
                                    + std::to_string(cert.stride)
                              : std::to_string(mismatches) + " mismatches; " + first_mismatch);
    rep.check("audits", walker.audit_failures() == 0 && cert.audit_failures == 0,
              std::to_string(walker.audits()) + " audits"
                  + (walker.audit_failures() ? "; " + walker.first_failure() : std::string()));

    if (mode == VerifyMode::leafbound) {
      rep.check("leafbound", worst_set && worst > threshold,
                "min c N(prefix) = " + (worst_set ? show(worst) : std::string("-")) + " at index "
                    + std::to_string(worst_index) + ", delta lambda = " + show(threshold));
    }
    if (mode == VerifyMode::exact) {
      rep.check("exact", exact_fail == 0,
                exact_fail != 0 ? exact_first
                                : "min distance "
                                      + (min_distance == UINT64_MAX ? std::string("-")
                                                                    : std::to_string(min_distance))
                                      + ", " + std::to_string(beyond_cap) + " beyond cap "
                                      + std::to_string(opt.bfs_cap) + ", delta lambda = "
                                      + show(threshold));
    }
    if (mode == VerifyMode::lemmas) {
      if (cert.lambda_source == LambdaSource::exact) {
        auto len = word_length(cert.base, cert.alphabet, opt.bfs_cap);
        if (len) {
          rep.check("lambda", *len == cert.lambda, "|g| = " + std::to_string(*len));
        } else {
          rep.skip("lambda", "|g| beyond cap " + std::to_string(opt.bfs_cap));
        }
      } else {
        rep.skip("lambda", "surrogate value " + std::to_string(cert.lambda));
      }
      if (!connection) {
        witness_lemmas(rep, cert.base, cert.segments, k, cert.lambda, cert.alphabet,
                       opt.audit_every);
      } else if (cert.segments.size() != 11 || cert.segments[5].label != "p") {
        rep.check("segments", false, std::to_string(cert.segments.size()) + " segments");
      } else {
        std::vector<Segment> first(cert.segments.begin(), cert.segments.begin() + 5);
        std::vector<Segment> second;
        for (std::size_t i = 10; i > 5; --i) {
          auto const& s = cert.segments[i];
          std::string label = s.label;
          if (label.size() > 3 && label.ends_with("inv")) {
            label.resize(label.size() - 3);
          }
          second.push_back({label, s.word.inverse(), s.origin});
        }
        Reporter ra(report, "a.");
        witness_lemmas(ra, cert.base, first, k, cert.lambda, cert.alphabet, opt.audit_every);
        Reporter rb(report, "b.");
        witness_lemmas(rb, cert.target, second, k, cert.lambda_end, cert.alphabet,
                       opt.audit_every);
        auto const& p = cert.segments[5].word;
        rep.check("connector.form", equal_words(p, connector(k.Q, cert.lambda, cert.lambda_end)));
        std::uint64_t const qmax = k.Q * std::max(cert.lambda, cert.lambda_end);
        // equal lambdas give equal end points and an empty connector
        std::uint64_t const want = cert.lambda == cert.lambda_end ? 0 : 2 * qmax;
        rep.check("connector.length", p.length() == want,
                  "||p|| = " + std::to_string(p.length()) + ", expected " + std::to_string(want));
        std::uint64_t const floor_n = k.Q * lambda_min;
        auto bad = every_prefix(standard_end(k.Q * cert.lambda), p, opt.audit_every,
                                [&](std::uint64_t, std::uint64_t n) { return n > floor_n; });
        rep.check("connector.prefixes", !bad,
                  bad.value_or("N > Q min(lambda) = " + std::to_string(floor_n)
                               + " for all " + std::to_string(p.length() + 1) + " prefixes"));
        Rational const bound = k.D * Rational(as_int(cert.lambda + cert.lambda_end))
                               + Rational(as_int(2 * qmax));
        rep.strict_check("length", k.strict, Rational(as_int(cert.length())) <= bound,
                         "||w|| = " + std::to_string(cert.length())
                             + ", D (lambda1 + lambda2) + 2 Q max(lambda) = " + show(bound));
      }
    }
    return report;
  }

}  // namespace thompson
