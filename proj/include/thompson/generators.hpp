#ifndef THOMPSON_GENERATORS_HPP_
#define THOMPSON_GENERATORS_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "element.hpp"
#include "incremental.hpp"

namespace thompson {

  using Rational = boost::rational<std::int64_t>;

  enum class Generator : std::uint8_t { x0, x1, c1, pi0 };
  std::string_view name(Generator g) noexcept;

  // A = {x0, x1} generates F, B = A + c1 generates T, C = B + pi0 generates V.
  enum class Alphabet : std::uint8_t { A, B, C };
  std::string_view name(Alphabet a) noexcept;
  Alphabet parse_alphabet(std::string_view s);
  bool contains(Alphabet a, Generator g) noexcept;
  // Smallest alphabet containing g.
  Alphabet alphabet_of(Generator g) noexcept;

  struct Letter {
    Generator base;
    std::int64_t exponent;  // nonzero

    friend bool operator==(Letter const&, Letter const&) = default;
  };

  // The unit letters of an alphabet in tie-breaking order:
  // x0 < x0^-1 < x1 < x1^-1 < c1 < c1^-1 < pi0 (pi0 is an involution).
  std::vector<Letter> unit_letters(Alphabet a);

  class GroupWord {
   public:
    GroupWord() = default;
    explicit GroupWord(Alphabet a) : _alphabet(a) {}
    GroupWord(Alphabet a, std::vector<Letter> letters);

    [[nodiscard]] Alphabet alphabet() const noexcept {
      return _alphabet;
    }
    void set_alphabet(Alphabet a);
    [[nodiscard]] std::vector<Letter> const& letters() const noexcept {
      return _letters;
    }
    [[nodiscard]] bool empty() const noexcept {
      return _letters.empty();
    }

    // ||w||: the sum of |exponent| over the letters.
    [[nodiscard]] std::uint64_t length() const noexcept;

    // Appends, merging with the last letter when the bases agree and
    // cancelling to nothing when the exponents sum to zero. No relations
    // are applied.
    void push(Generator g, std::int64_t exponent);
    void append(GroupWord const& w);

    // First n unit letters (n <= length()).
    [[nodiscard]] GroupWord prefix(std::uint64_t n) const;
    [[nodiscard]] GroupWord inverse() const;

    friend bool operator==(GroupWord const&, GroupWord const&) = default;

   private:
    Alphabet _alphabet = Alphabet::A;
    std::vector<Letter> _letters;
  };

  GroupWord operator*(GroupWord const& a, GroupWord const& b);

  // Text form: "x0^2 x1^-1 x0^-1"; the empty word is "1". Letters outside
  // the declared alphabet (when given) raise FormatError; otherwise the
  // alphabet is the smallest one containing every letter.
  GroupWord parse_word(std::string_view text, std::optional<Alphabet> alphabet = std::nullopt);
  std::string serialize_word(GroupWord const& w);

  Element const& standard_generator(Generator g);
  Element const& unit_element(Generator g, bool inverse);

  // x_0 = x0 and x_n = (x0) copied into [1^n], which equals
  // x0^-(n-1) x1 x0^(n-1) for n >= 1.
  Element x_n(std::uint64_t n);

  // Left to right product of the letters.
  Element eval_word(GroupWord const& w);
  Element eval_word_from(Element const& start, GroupWord const& w);
  // The same product as a fold of multiply(); slow, used as a cross-check.
  Element eval_word_by_multiply(GroupWord const& w);

  Rational leaf_length_lower_bound(Element const& a, Rational c);

  // Evaluates a word one unit letter at a time on an IncrementalDiagram and
  // audits the fast path every `audit_every` steps: a structural recount,
  // plus, while the element is small, comparison with the canonical product
  // computed by multiply(). audit_every = 0 turns audits off.
  class WordEvaluator {
   public:
    static constexpr std::uint64_t canonical_audit_limit = 4096;

    explicit WordEvaluator(Element const& start, std::uint64_t audit_every = 512);

    void step(Generator g, bool inverse);
    // Calls on_step(steps(), num_leaves()) after every unit letter.
    void run(GroupWord const& w,
             std::function<void(std::uint64_t, std::uint64_t)> const& on_step = {});

    [[nodiscard]] std::uint64_t steps() const noexcept {
      return _steps;
    }
    [[nodiscard]] std::uint64_t num_leaves() const noexcept {
      return _diagram.num_leaves();
    }
    [[nodiscard]] IncrementalDiagram const& diagram() const noexcept {
      return _diagram;
    }
    [[nodiscard]] Element element() const {
      return _diagram.to_element();
    }
    [[nodiscard]] std::uint64_t audits() const noexcept {
      return _audits;
    }
    [[nodiscard]] std::uint64_t audit_failures() const noexcept {
      return _failures;
    }
    [[nodiscard]] std::string const& first_failure() const noexcept {
      return _first_failure;
    }
    // Forces an audit now.
    void audit();

   private:
    IncrementalDiagram _diagram;
    std::uint64_t _audit_every;
    std::uint64_t _steps = 0;
    std::uint64_t _last_audit = 0;
    std::uint64_t _audits = 0;
    std::uint64_t _failures = 0;
    std::string _first_failure;
    std::optional<Element> _checkpoint;  // element at the last audit
    Element _chunk;                       // letters applied since then
  };

}  // namespace thompson

#endif  // THOMPSON_GENERATORS_HPP_
