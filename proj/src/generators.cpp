#include "thompson/generators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>

#include "thompson/error.hpp"

namespace thompson {

  namespace {

    Element literal(std::initializer_list<std::pair<char const*, char const*>> pairs) {
      std::vector<BranchPair> v;
      for (auto const& [d, r] : pairs) {
        v.push_back({BinaryWord::from_string(d), BinaryWord::from_string(r)});
      }
      return reduce(TreeDiagram::from_pairs(std::move(v)));
    }

    struct Table {
      std::array<Element, 4> plain;
      std::array<Element, 4> inverse;
      std::array<IncrementalDiagram::Pattern, 4> plain_pattern;
      std::array<IncrementalDiagram::Pattern, 4> inverse_pattern;

      Table() {
        plain[0] = literal({{"00", "0"}, {"01", "10"}, {"1", "11"}});
        plain[1] = literal({{"0", "0"}, {"100", "10"}, {"101", "110"}, {"11", "111"}});
        plain[2] = literal({{"0", "11"}, {"10", "0"}, {"11", "10"}});
        plain[3] = literal({{"00", "01"}, {"01", "00"}, {"1", "1"}});
        for (int i = 0; i < 4; ++i) {
          inverse[i] = invert(plain[i]);
          plain_pattern[i] = IncrementalDiagram::compile(plain[i]);
          inverse_pattern[i] = IncrementalDiagram::compile(inverse[i]);
        }
      }
    };

    Table const& table() {
      static Table const t;
      return t;
    }

    std::size_t index(Generator g) {
      return static_cast<std::size_t>(g);
    }

  }  // namespace

  std::string_view name(Generator g) noexcept {
    switch (g) {
      case Generator::x0:
        return "x0";
      case Generator::x1:
        return "x1";
      case Generator::c1:
        return "c1";
      case Generator::pi0:
        return "pi0";
    }
    return "?";
  }

  std::string_view name(Alphabet a) noexcept {
    switch (a) {
      case Alphabet::A:
        return "A";
      case Alphabet::B:
        return "B";
      case Alphabet::C:
        return "C";
    }
    return "?";
  }

  Alphabet parse_alphabet(std::string_view s) {
    if (s == "A") {
      return Alphabet::A;
    }
    if (s == "B") {
      return Alphabet::B;
    }
    if (s == "C") {
      return Alphabet::C;
    }
    throw Error(ErrorKind::FormatError, "unknown alphabet \"" + std::string(s) + "\"");
  }

  Alphabet alphabet_of(Generator g) noexcept {
    switch (g) {
      case Generator::x0:
      case Generator::x1:
        return Alphabet::A;
      case Generator::c1:
        return Alphabet::B;
      case Generator::pi0:
        return Alphabet::C;
    }
    return Alphabet::C;
  }

  bool contains(Alphabet a, Generator g) noexcept {
    return alphabet_of(g) <= a;
  }

  std::vector<Letter> unit_letters(Alphabet a) {
    std::vector<Letter> out{{Generator::x0, 1}, {Generator::x0, -1}, {Generator::x1, 1}, {Generator::x1, -1}};
    if (a >= Alphabet::B) {
      out.push_back({Generator::c1, 1});
      out.push_back({Generator::c1, -1});
    }
    if (a >= Alphabet::C) {
      out.push_back({Generator::pi0, 1});
    }
    return out;
  }

  GroupWord::GroupWord(Alphabet a, std::vector<Letter> letters) : _alphabet(a) {
    for (auto const& l : letters) {
      push(l.base, l.exponent);
    }
  }

  void GroupWord::set_alphabet(Alphabet a) {
    for (auto const& l : _letters) {
      if (!contains(a, l.base)) {
        throw Error(ErrorKind::FormatError, "letter " + std::string(name(l.base))
                                                + " is not in alphabet " + std::string(name(a)));
      }
    }
    _alphabet = a;
  }

  std::uint64_t GroupWord::length() const noexcept {
    std::uint64_t n = 0;
    for (auto const& l : _letters) {
      n += static_cast<std::uint64_t>(std::llabs(l.exponent));
    }
    return n;
  }

  void GroupWord::push(Generator g, std::int64_t exponent) {
    if (exponent == 0) {
      return;
    }
    if (!contains(_alphabet, g)) {
      throw Error(ErrorKind::FormatError, "letter " + std::string(name(g)) + " is not in alphabet "
                                              + std::string(name(_alphabet)));
    }
    if (!_letters.empty() && _letters.back().base == g) {
      _letters.back().exponent += exponent;
      if (_letters.back().exponent == 0) {
        _letters.pop_back();
      }
      return;
    }
    _letters.push_back({g, exponent});
  }

  void GroupWord::append(GroupWord const& w) {
    for (auto const& l : w._letters) {
      push(l.base, l.exponent);
    }
  }

  GroupWord GroupWord::prefix(std::uint64_t n) const {
    GroupWord out(_alphabet);
    for (auto const& l : _letters) {
      if (n == 0) {
        break;
      }
      auto const len = static_cast<std::uint64_t>(std::llabs(l.exponent));
      auto const take = std::min(len, n);
      out.push(l.base, l.exponent > 0 ? static_cast<std::int64_t>(take) : -static_cast<std::int64_t>(take));
      n -= take;
    }
    return out;
  }

  GroupWord GroupWord::inverse() const {
    GroupWord out(_alphabet);
    for (auto it = _letters.rbegin(); it != _letters.rend(); ++it) {
      out.push(it->base, -it->exponent);
    }
    return out;
  }

  GroupWord operator*(GroupWord const& a, GroupWord const& b) {
    GroupWord out(std::max(a.alphabet(), b.alphabet()));
    out.append(a);
    out.append(b);
    return out;
  }

  GroupWord parse_word(std::string_view text, std::optional<Alphabet> alphabet) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    bool saw_one = false;
    auto fail = [&](std::string const& what) {
      throw Error(ErrorKind::FormatError, what + " at column " + std::to_string(pos + 1));
    };
    while (pos < text.size()) {
      if (std::isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      std::size_t end = pos;
      while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) {
        ++end;
      }
      std::string_view tok = text.substr(pos, end - pos);
      if (tok == "1") {
        saw_one = true;
        pos = end;
        continue;
      }
      std::size_t const caret = tok.find('^');
      std::string_view base = tok.substr(0, caret);
      Generator g;
      if (base == "x0") {
        g = Generator::x0;
      } else if (base == "x1") {
        g = Generator::x1;
      } else if (base == "c1") {
        g = Generator::c1;
      } else if (base == "pi0") {
        g = Generator::pi0;
      } else {
        fail("unknown generator \"" + std::string(base) + "\"");
      }
      std::int64_t e = 1;
      if (caret != std::string_view::npos) {
        std::string_view num = tok.substr(caret + 1);
        auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), e);
        if (ec != std::errc() || ptr != num.data() + num.size() || e == 0) {
          fail("bad exponent \"" + std::string(num) + "\"");
        }
      }
      letters.push_back({g, e});
      pos = end;
    }
    if (saw_one && !letters.empty()) {
      throw Error(ErrorKind::FormatError, "\"1\" may only stand alone for the empty word");
    }
    Alphabet a = Alphabet::A;
    for (auto const& l : letters) {
      a = std::max(a, alphabet_of(l.base));
    }
    if (alphabet) {
      if (a > *alphabet) {
        throw Error(ErrorKind::FormatError, "word uses letters outside alphabet "
                                                + std::string(name(*alphabet)));
      }
      a = *alphabet;
    }
    return GroupWord(a, letters);
  }

  std::string serialize_word(GroupWord const& w) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (auto const& l : w.letters()) {
      if (!out.empty()) {
        out += ' ';
      }
      out += name(l.base);
      if (l.exponent != 1) {
        out += '^' + std::to_string(l.exponent);
      }
    }
    return out;
  }

  Element const& standard_generator(Generator g) {
    return table().plain[index(g)];
  }

  Element const& unit_element(Generator g, bool inverse) {
    return inverse ? table().inverse[index(g)] : table().plain[index(g)];
  }

  Element x_n(std::uint64_t n) {
    if (n == 0) {
      return standard_generator(Generator::x0);
    }
    return copy_into_interval(standard_generator(Generator::x0), BinaryWord::repeat(true, n));
  }

  Element eval_word_from(Element const& start, GroupWord const& w) {
    IncrementalDiagram d(start);
    auto const& t = table();
    for (auto const& l : w.letters()) {
      auto const& pat = l.exponent > 0 ? t.plain_pattern[index(l.base)] : t.inverse_pattern[index(l.base)];
      for (std::int64_t k = 0; k < std::llabs(l.exponent); ++k) {
        d.right_multiply(pat);
      }
    }
    return d.to_element();
  }

  Element eval_word(GroupWord const& w) {
    return eval_word_from(Element(), w);
  }

  Element eval_word_by_multiply(GroupWord const& w) {
    Element r;
    for (auto const& l : w.letters()) {
      Element const& u = unit_element(l.base, l.exponent < 0);
      for (std::int64_t k = 0; k < std::llabs(l.exponent); ++k) {
        r = multiply(r, u);
      }
    }
    return r;
  }

  Rational leaf_length_lower_bound(Element const& a, Rational c) {
    return c * Rational(static_cast<std::int64_t>(a.num_leaves()));
  }

  WordEvaluator::WordEvaluator(Element const& start, std::uint64_t audit_every)
      : _diagram(start), _audit_every(audit_every) {
    if (audit_every != 0 && start.num_leaves() <= canonical_audit_limit) {
      _checkpoint = start;
    }
  }

  void WordEvaluator::step(Generator g, bool inverse) {
    auto const& t = table();
    _diagram.right_multiply(inverse ? t.inverse_pattern[index(g)] : t.plain_pattern[index(g)]);
    if (_checkpoint) {
      _chunk = multiply(_chunk, unit_element(g, inverse));
    }
    ++_steps;
    if (_audit_every != 0 && _steps - _last_audit >= _audit_every) {
      audit();
    }
  }

  void WordEvaluator::run(GroupWord const& w,
                          std::function<void(std::uint64_t, std::uint64_t)> const& on_step) {
    for (auto const& l : w.letters()) {
      for (std::int64_t k = 0; k < std::llabs(l.exponent); ++k) {
        step(l.base, l.exponent < 0);
        if (on_step) {
          on_step(_steps, _diagram.num_leaves());
        }
      }
    }
  }

  void WordEvaluator::audit() {
    ++_audits;
    _last_audit = _steps;
    auto problem = _diagram.audit();
    bool const small = _diagram.num_leaves() <= canonical_audit_limit;
    if (!problem && small && _checkpoint) {
      Element expected = multiply(*_checkpoint, _chunk);
      Element actual = _diagram.to_element();
      if (!(expected == actual)) {
        problem = "incremental product differs from the canonical product after step "
                  + std::to_string(_steps);
      }
      _checkpoint = std::move(actual);
    } else if (small) {
      _checkpoint = _diagram.to_element();
    } else {
      _checkpoint.reset();
    }
    _chunk = Element();
    if (problem) {
      if (_failures == 0) {
        _first_failure = *problem;
      }
      ++_failures;
    }
  }

}  // namespace thompson
