#ifndef THOMPSON_WITNESS_HPP_
#define THOMPSON_WITNESS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "element.hpp"
#include "generators.hpp"
#include "synthesis.hpp"

namespace thompson {

  struct WitnessConstants {
    Rational c{1, 4};
    Rational C{3};
    std::uint64_t M = 4;
    std::uint64_t Q = 8;
    Rational delta{1, 128};
    Rational D{152};
    bool strict = false;

    // M = ceil(100 C / c), Q = ceil(10 M / c^2), delta = c / 8M,
    // D = 8M / c + 3Q.
    static WitnessConstants strict_from(Rational c, Rational C);
    // c = 1/4, C = 3, M = 4, Q = 8 with delta and D from the same formulas.
    static WitnessConstants scaled();
    // Arbitrary values; delta and D follow the formulas. strict is set when
    // the strict inequalities happen to hold.
    static WitnessConstants custom(Rational c, Rational C, std::uint64_t M, std::uint64_t Q);

    // Whether M >= 100C/c, Q >= 10M/c^2 and delta, D match.
    [[nodiscard]] bool satisfies_strict() const;

    friend bool operator==(WitnessConstants const&, WitnessConstants const&) = default;
  };

  enum class LambdaSource { exact, surrogate };
  std::string_view name(LambdaSource s) noexcept;

  struct Segment {
    std::string label;
    GroupWord word;
    std::string origin;  // "defined", or the synthesis path of w3 and w5

    friend bool operator==(Segment const&, Segment const&) = default;
  };

  // N of the element reached after `index` letters, and optionally its exact
  // distance to the identity.
  struct Evidence {
    std::uint64_t index = 0;
    std::uint64_t leaves = 0;
    std::optional<std::uint64_t> distance;

    friend bool operator==(Evidence const&, Evidence const&) = default;
  };

  enum class CertificateKind { witness, connection };

  struct PathCertificate {
    CertificateKind kind = CertificateKind::witness;
    Alphabet alphabet = Alphabet::A;
    Element base;
    Element target;
    WitnessConstants constants;
    std::uint64_t lambda = 0;  // stands for |base|
    LambdaSource lambda_source = LambdaSource::exact;
    std::uint64_t lambda_end = 0;  // connection only: stands for |target|
    LambdaSource lambda_end_source = LambdaSource::exact;
    std::vector<Segment> segments;
    std::uint64_t stride = 1;
    std::vector<Evidence> evidence;
    std::uint64_t audits = 0;
    std::uint64_t audit_failures = 0;

    [[nodiscard]] std::uint64_t length() const;
    [[nodiscard]] GroupWord word() const;
    // Letter offset where each segment starts, plus the total length.
    [[nodiscard]] std::vector<std::uint64_t> boundaries() const;

    friend bool operator==(PathCertificate const&, PathCertificate const&) = default;
  };

  struct Step {
    GroupWord word;
    Element next;
  };

  // x0^a x1^-1 x0^-(a-1) as an element, i.e. x0 copied into [0^(a-1)]; a >= 2.
  Element standard_end(std::uint64_t a);

  Step step_w1(Element const& g);
  Step step_w2(Element const& g1, WitnessConstants const& k);
  Element closing_element(Element const& g1);
  Step step_w3(Element const& g1, Element const& g2, Alphabet alphabet, unsigned bfs_cap,
               SynthesisPath* path = nullptr);
  Step step_w4(Element const& g3, std::uint64_t lambda, WitnessConstants const& k);
  Step step_w5(Element const& g3, Element const& g4, Alphabet alphabet, unsigned bfs_cap,
               SynthesisPath* path = nullptr);

  // The value used for |g|: exact when within bfs_cap, else ceil(C N(g)).
  std::pair<std::uint64_t, LambdaSource> lambda_for(Element const& g, Alphabet alphabet,
                                                    unsigned bfs_cap, WitnessConstants const& k);

  struct WitnessOptions {
    unsigned bfs_cap = 8;
    std::optional<std::uint64_t> lambda;  // overrides lambda_for
    std::uint64_t evidence_limit = 10'000;
    std::uint64_t audit_every = 512;
  };

  // The five-segment path from g to standard_end(Q lambda). The alphabet
  // must generate a group containing g.
  PathCertificate witness(Element const& g, WitnessConstants const& k, Alphabet alphabet,
                          WitnessOptions const& opt = {});

  // Path from g1 to g2 through the two witness paths and the connector
  // between their ends. Precomputed witness certificates may be passed in.
  PathCertificate connect(Element const& g1, Element const& g2, WitnessConstants const& k,
                          Alphabet alphabet, WitnessOptions const& opt = {},
                          PathCertificate const* w1 = nullptr,
                          PathCertificate const* w2 = nullptr);

  // x0^(Q l1 - 1) x1 x0^(Q (l2 - l1)) x1^-1 x0^-(Q l2 - 1) for l1 <= l2, and the
  // inverse of connector(l2, l1) otherwise.
  GroupWord connector(std::uint64_t Q, std::uint64_t l1, std::uint64_t l2);

  enum class VerifyMode { exact, leafbound, lemmas };
  VerifyMode parse_verify_mode(std::string_view s);
  std::string_view name(VerifyMode m) noexcept;

  enum class CheckStatus { pass, fail, skipped };
  std::string_view name(CheckStatus s) noexcept;

  struct Check {
    std::string name;
    CheckStatus status;
    std::string detail;
  };

  struct VerificationReport {
    VerifyMode mode = VerifyMode::lemmas;
    std::vector<Check> checks;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] Check const* find(std::string_view name) const;
    [[nodiscard]] std::string to_text() const;
  };

  struct VerifyOptions {
    unsigned bfs_cap = 10;
    std::uint64_t audit_every = 512;
  };

  VerificationReport verify(PathCertificate const& cert, VerifyMode mode,
                            VerifyOptions const& opt = {});

}  // namespace thompson

#endif  // THOMPSON_WITNESS_HPP_
