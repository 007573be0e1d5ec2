#include "thompson/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "thompson/error.hpp"

namespace thompson {

  namespace {

    [[noreturn]] void format_error(std::size_t line, std::size_t column, std::string const& msg) {
      throw Error(ErrorKind::FormatError,
                  "line " + std::to_string(line) + ", column " + std::to_string(column) + ": "
                      + msg);
    }

    std::string branch_text(BinaryWord const& u) {
      return u.empty() ? "-" : u.to_string();
    }

    bool is_space(char c) {
      return c == ' ' || c == '\t' || c == '\r';
    }

    std::string_view trim(std::string_view s) {
      while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
      }
      while (!s.empty() && is_space(s.back())) {
        s.remove_suffix(1);
      }
      return s;
    }

    // Splits text into lines, keeping 1-based line numbers.
    std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
      std::vector<std::pair<std::size_t, std::string_view>> out;
      std::size_t n = 1;
      while (!text.empty()) {
        auto const nl = text.find('\n');
        out.emplace_back(n++, text.substr(0, nl));
        if (nl == std::string_view::npos) {
          break;
        }
        text.remove_prefix(nl + 1);
      }
      return out;
    }

    BinaryWord parse_branch(std::string_view s, std::size_t line, std::size_t column) {
      if (s == "-") {
        return {};
      }
      if (s.empty() || s.find_first_not_of("01") != std::string_view::npos) {
        format_error(line, column, "expected a binary word or '-', found \"" + std::string(s) + "\"");
      }
      return BinaryWord::from_string(s);
    }

    // One "u -> v" record; `offset` is the column of rec[0].
    BranchPair parse_pair(std::string_view rec, std::size_t line, std::size_t offset) {
      auto const arrow = rec.find("->");
      if (arrow == std::string_view::npos) {
        format_error(line, offset, "expected \"u -> v\"");
      }
      auto lhs = rec.substr(0, arrow);
      auto rhs = rec.substr(arrow + 2);
      std::size_t lead = 0;
      while (lead < lhs.size() && is_space(lhs[lead])) {
        ++lead;
      }
      std::size_t rlead = 0;
      while (rlead < rhs.size() && is_space(rhs[rlead])) {
        ++rlead;
      }
      return {parse_branch(trim(lhs), line, offset + lead),
              parse_branch(trim(rhs), line, offset + arrow + 2 + rlead)};
    }

    template <typename T>
    T parse_uint(std::string_view s, std::size_t line, char const* what) {
      T v{};
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || p != s.data() + s.size()) {
        format_error(line, 1, std::string("expected ") + what + ", found \"" + std::string(s) + "\"");
      }
      return v;
    }

    Rational parse_rational(std::string_view s, std::size_t line) {
      auto const slash = s.find('/');
      auto num = s.substr(0, slash);
      bool neg = !num.empty() && num.front() == '-';
      if (neg) {
        num.remove_prefix(1);
      }
      auto n = static_cast<std::int64_t>(parse_uint<std::uint64_t>(num, line, "a rational"));
      std::int64_t d = 1;
      if (slash != std::string_view::npos) {
        d = static_cast<std::int64_t>(parse_uint<std::uint64_t>(s.substr(slash + 1), line, "a rational"));
        if (d == 0) {
          format_error(line, 1, "zero denominator");
        }
      }
      return Rational(neg ? -n : n, d);
    }

    std::string show(Rational q) {
      std::string s = std::to_string(q.numerator());
      if (q.denominator() != 1) {
        s += "/" + std::to_string(q.denominator());
      }
      return s;
    }

    std::vector<std::string_view> fields(std::string_view s) {
      std::vector<std::string_view> out;
      std::size_t i = 0;
      while (i < s.size()) {
        while (i < s.size() && is_space(s[i])) {
          ++i;
        }
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j])) {
          ++j;
        }
        if (j > i) {
          out.push_back(s.substr(i, j - i));
        }
        i = j;
      }
      return out;
    }

    Element element_from_pairs(std::vector<BranchPair> pairs, std::size_t line) {
      if (pairs.empty()) {
        format_error(line, 1, "no branch pairs");
      }
      return reduce(TreeDiagram::from_pairs(std::move(pairs)));
    }

    std::vector<BranchPair> parse_inline_pairs(std::string_view s, std::size_t line,
                                               std::size_t offset) {
      std::vector<BranchPair> pairs;
      std::size_t start = 0;
      while (start <= s.size()) {
        auto const semi = s.find(';', start);
        auto const end = semi == std::string_view::npos ? s.size() : semi;
        auto rec = s.substr(start, end - start);
        if (!trim(rec).empty()) {
          pairs.push_back(parse_pair(rec, line, offset + start));
        }
        if (semi == std::string_view::npos) {
          break;
        }
        start = semi + 1;
      }
      return pairs;
    }

  }  // namespace

  // ------------------------------------------------------------- elements

  ParsedElement parse_element(std::string_view text) {
    std::vector<BranchPair> pairs;
    std::size_t last_line = 1;
    for (auto [n, line] : lines_of(text)) {
      last_line = n;
      auto const hash = line.find('#');
      if (hash != std::string_view::npos) {
        line = line.substr(0, hash);
      }
      auto more = parse_inline_pairs(line, n, 1);
      pairs.insert(pairs.end(), more.begin(), more.end());
    }
    ParsedElement out;
    out.input_pairs = pairs.size();
    out.element = element_from_pairs(std::move(pairs), last_line);
    out.was_reduced = out.element.num_leaves() != out.input_pairs;
    return out;
  }

  std::string serialize_element(Element const& a) {
    std::string out;
    for (auto const& p : a.pairs()) {
      out += branch_text(p.domain) + " -> " + branch_text(p.range) + "\n";
    }
    return out;
  }

  std::string serialize_element_inline(Element const& a) {
    std::string out;
    for (auto const& p : a.pairs()) {
      if (!out.empty()) {
        out += "; ";
      }
      out += branch_text(p.domain) + " -> " + branch_text(p.range);
    }
    return out;
  }

  // ----------------------------------------------------------------- balls

  std::string serialize_ball(BallIndex const& ball) {
    std::ostringstream out;
    out << "thompson-ball 1\n"
        << "alphabet " << name(ball.alphabet()) << "\n"
        << "radius " << ball.radius() << "\n"
        << "size " << ball.size() << "\n";
    for (std::uint32_t id = 0; id < ball.size(); ++id) {
      out << id << ' ' << ball.distance(id) << ' ';
      if (ball.parent_letter(id) < 0) {
        out << "- -";
      } else {
        out << ball.parent(id) << ' ' << ball.parent_letter(id);
      }
      out << ' ' << ball.num_leaves(id) << ' ' << serialize_element_inline(ball.element(id))
          << "\n";
    }
    return out.str();
  }

  BallIndex parse_ball(std::string_view text) {
    auto const lines = lines_of(text);
    auto header = [&](std::size_t i, std::string_view key) {
      if (i >= lines.size()) {
        format_error(i + 1, 1, "missing \"" + std::string(key) + "\"");
      }
      auto f = fields(lines[i].second);
      if (f.size() != 2 || f[0] != key) {
        format_error(lines[i].first, 1, "expected \"" + std::string(key) + " <value>\"");
      }
      return f[1];
    };
    if (header(0, "thompson-ball") != "1") {
      format_error(1, 15, "unsupported ball format version");
    }
    BallIndex b;
    try {
      b._alphabet = parse_alphabet(header(1, "alphabet"));
    } catch (Error const&) {
      format_error(2, 10, "unknown alphabet");
    }
    b._radius = parse_uint<unsigned>(header(2, "radius"), 3, "a radius");
    auto const size = parse_uint<std::size_t>(header(3, "size"), 4, "a size");
    auto const letters = unit_letters(b._alphabet);
    b._letters = letters.size();
    if (lines.size() < 4 + size) {
      format_error(lines.size(), 1, "expected " + std::to_string(size) + " members");
    }
    b._level_start.push_back(0);
    for (std::size_t i = 0; i < size; ++i) {
      auto const [n, line] = lines[4 + i];
      auto f = fields(line);
      if (f.size() < 6) {
        format_error(n, 1, "expected \"<id> <distance> <parent> <letter> <leaves> <element>\"");
      }
      if (parse_uint<std::size_t>(f[0], n, "an id") != i) {
        format_error(n, 1, "ids must be consecutive from 0");
      }
      auto const dist = parse_uint<unsigned>(f[1], n, "a distance");
      auto const elem_col = static_cast<std::size_t>(f[5].data() - line.data());
      Element const g = element_from_pairs(parse_inline_pairs(line.substr(elem_col), n, elem_col + 1), n);
      auto const leaves = parse_uint<std::uint32_t>(f[4], n, "a leaf count");
      if (leaves != g.num_leaves()) {
        format_error(n, 1, "leaf count does not match the element");
      }
      int letter = -1;
      std::uint32_t parent = BallIndex::none;
      if (i == 0) {
        if (dist != 0 || f[2] != "-" || f[3] != "-" || !g.is_identity()) {
          format_error(n, 1, "the first member must be the identity");
        }
      } else {
        parent = parse_uint<std::uint32_t>(f[2], n, "a parent id");
        letter = parse_uint<int>(f[3], n, "a letter index");
        if (parent >= i || static_cast<std::size_t>(letter) >= letters.size()) {
          format_error(n, 1, "parent or letter out of range");
        }
        if (dist != b._dist[parent] + 1u || dist > b._radius || dist < b._dist.back()) {
          format_error(n, 1, "distances must increase by one along parents and be sorted");
        }
        auto const& l = letters[static_cast<std::size_t>(letter)];
        if (!(multiply(b.element(parent), unit_element(l.base, l.exponent < 0)) == g)) {
          format_error(n, 1, "member is not its parent times the letter");
        }
      }
      while (b._level_start.size() <= dist) {
        b._level_start.push_back(static_cast<std::uint32_t>(i));
      }
      std::string key = g.encode();
      if (b.find_key(key)) {
        format_error(n, 1, "duplicate member");
      }
      b.add(std::move(key), dist, letter, parent, leaves);
    }
    while (b._level_start.size() <= b._radius + 1) {
      b._level_start.push_back(static_cast<std::uint32_t>(size));
    }
    return b;
  }

  void write_ball_file(BallIndex const& ball, std::string const& path) {
    write_text_file(path, serialize_ball(ball));
  }

  BallIndex read_ball_file(std::string const& path) {
    return parse_ball(read_text_file(path));
  }

  // ---------------------------------------------------------- certificates

  std::string serialize_certificate(PathCertificate const& c) {
    std::ostringstream out;
    auto const& k = c.constants;
    bool const connection = c.kind == CertificateKind::connection;
    out << "thompson-certificate 1\n"
        << "kind " << (connection ? "connection" : "witness") << "\n"
        << "alphabet " << name(c.alphabet) << "\n"
        << "constants c=" << show(k.c) << " C=" << show(k.C) << " M=" << k.M << " Q=" << k.Q
        << " delta=" << show(k.delta) << " D=" << show(k.D) << " strict=" << (k.strict ? 1 : 0)
        << "\n"
        << "lambda " << c.lambda << ' ' << name(c.lambda_source) << "\n";
    if (connection) {
      out << "lambda-end " << c.lambda_end << ' ' << name(c.lambda_end_source) << "\n";
    }
    out << "stride " << c.stride << "\n"
        << "audits " << c.audits << ' ' << c.audit_failures << "\n"
        << "base " << c.base.num_leaves() << "\n"
        << serialize_element(c.base);
    if (c.target.num_leaves() <= inline_target_limit) {
      out << "target " << c.target.num_leaves() << "\n" << serialize_element(c.target);
    } else {
      GroupWord w;
      if (!connection && c.target == standard_end(k.Q * c.lambda)) {
        w = parse_word("x0^" + std::to_string(k.Q * c.lambda) + " x1^-1 x0^-"
                       + std::to_string(k.Q * c.lambda - 1));
      } else {
        w = synthesize_word(c.target, c.alphabet, 0).word;
      }
      out << "target-word " << serialize_word(w) << "\n";
    }
    out << "segments " << c.segments.size() << "\n";
    for (auto const& s : c.segments) {
      out << s.label << ' ' << s.origin << ' ' << serialize_word(s.word) << "\n";
    }
    out << "evidence " << c.evidence.size() << "\n";
    for (auto const& e : c.evidence) {
      out << e.index << ' ' << e.leaves << ' ';
      if (e.distance) {
        out << *e.distance;
      } else {
        out << '-';
      }
      out << "\n";
    }
    out << "end\n";
    return out.str();
  }

  PathCertificate parse_certificate(std::string_view text) {
    auto const lines = lines_of(text);
    std::size_t i = 0;
    auto next = [&](std::string_view key) {
      while (i < lines.size() && trim(lines[i].second).empty()) {
        ++i;
      }
      if (i >= lines.size()) {
        format_error(lines.size() + 1, 1, "missing \"" + std::string(key) + "\"");
      }
      auto const [n, line] = lines[i++];
      auto f = fields(line);
      if (f.empty() || f[0] != key) {
        format_error(n, 1, "expected \"" + std::string(key) + "\"");
      }
      return std::pair{n, f};
    };
    auto element_block = [&](std::size_t count, std::size_t n0) {
      std::vector<BranchPair> pairs;
      for (std::size_t j = 0; j < count; ++j) {
        if (i >= lines.size()) {
          format_error(n0, 1, "element block is cut short");
        }
        auto const [n, line] = lines[i++];
        pairs.push_back(parse_pair(line, n, 1));
      }
      return element_from_pairs(std::move(pairs), n0);
    };

    PathCertificate c;
    if (auto [n, f] = next("thompson-certificate"); f.size() != 2 || f[1] != "1") {
      format_error(n, 1, "unsupported certificate version");
    }
    {
      auto [n, f] = next("kind");
      if (f.size() != 2 || (f[1] != "witness" && f[1] != "connection")) {
        format_error(n, 6, "kind must be witness or connection");
      }
      c.kind = f[1] == "witness" ? CertificateKind::witness : CertificateKind::connection;
    }
    {
      auto [n, f] = next("alphabet");
      if (f.size() != 2) {
        format_error(n, 1, "expected \"alphabet <A|B|C>\"");
      }
      c.alphabet = parse_alphabet(f[1]);
    }
    {
      auto [n, f] = next("constants");
      std::optional<Rational> cc, CC, delta, D;
      std::optional<std::uint64_t> M, Q;
      std::optional<bool> strict;
      for (std::size_t j = 1; j < f.size(); ++j) {
        auto const eq = f[j].find('=');
        if (eq == std::string_view::npos) {
          format_error(n, 1, "expected key=value in constants");
        }
        auto key = f[j].substr(0, eq), val = f[j].substr(eq + 1);
        if (key == "c") {
          cc = parse_rational(val, n);
        } else if (key == "C") {
          CC = parse_rational(val, n);
        } else if (key == "M") {
          M = parse_uint<std::uint64_t>(val, n, "M");
        } else if (key == "Q") {
          Q = parse_uint<std::uint64_t>(val, n, "Q");
        } else if (key == "delta") {
          delta = parse_rational(val, n);
        } else if (key == "D") {
          D = parse_rational(val, n);
        } else if (key == "strict") {
          strict = val == "1";
        } else {
          format_error(n, 1, "unknown constant \"" + std::string(key) + "\"");
        }
      }
      if (!cc || !CC || !M || !Q || !delta || !D || !strict) {
        format_error(n, 1, "constants need c, C, M, Q, delta, D and strict");
      }
      c.constants = {*cc, *CC, *M, *Q, *delta, *D, *strict};
    }
    auto lambda = [&](std::string_view key, std::uint64_t& v, LambdaSource& src) {
      auto [n, f] = next(key);
      if (f.size() != 3 || (f[2] != "exact" && f[2] != "surrogate")) {
        format_error(n, 1, "expected \"" + std::string(key) + " <value> <exact|surrogate>\"");
      }
      v = parse_uint<std::uint64_t>(f[1], n, "lambda");
      src = f[2] == "exact" ? LambdaSource::exact : LambdaSource::surrogate;
    };
    lambda("lambda", c.lambda, c.lambda_source);
    if (c.kind == CertificateKind::connection) {
      lambda("lambda-end", c.lambda_end, c.lambda_end_source);
    }
    {
      auto [n, f] = next("stride");
      c.stride = parse_uint<std::uint64_t>(f.size() == 2 ? f[1] : "", n, "a stride");
    }
    {
      auto [n, f] = next("audits");
      if (f.size() != 3) {
        format_error(n, 1, "expected \"audits <count> <failures>\"");
      }
      c.audits = parse_uint<std::uint64_t>(f[1], n, "an audit count");
      c.audit_failures = parse_uint<std::uint64_t>(f[2], n, "a failure count");
    }
    {
      auto [n, f] = next("base");
      c.base = element_block(parse_uint<std::size_t>(f.size() == 2 ? f[1] : "", n, "a size"), n);
    }
    while (i < lines.size() && trim(lines[i].second).empty()) {
      ++i;
    }
    if (i < lines.size() && fields(lines[i].second).front() == "target-word") {
      auto const [n, line] = lines[i++];
      auto const pos = line.find("target-word") + 11;
      c.target = eval_word(parse_word(trim(line.substr(pos)), c.alphabet));
    } else {
      auto [n, f] = next("target");
      c.target = element_block(parse_uint<std::size_t>(f.size() == 2 ? f[1] : "", n, "a size"), n);
    }
    {
      auto [n, f] = next("segments");
      auto const count = parse_uint<std::size_t>(f.size() == 2 ? f[1] : "", n, "a count");
      for (std::size_t j = 0; j < count; ++j) {
        if (i >= lines.size()) {
          format_error(n, 1, "segment list is cut short");
        }
        auto const [m, line] = lines[i++];
        auto g = fields(line);
        if (g.size() < 3) {
          format_error(m, 1, "expected \"<label> <origin> <word>\"");
        }
        auto const word_col = static_cast<std::size_t>(g[2].data() - line.data());
        c.segments.push_back({std::string(g[0]), parse_word(trim(line.substr(word_col)), c.alphabet),
                              std::string(g[1])});
      }
    }
    {
      auto [n, f] = next("evidence");
      auto const count = parse_uint<std::size_t>(f.size() == 2 ? f[1] : "", n, "a count");
      c.evidence.reserve(count);
      for (std::size_t j = 0; j < count; ++j) {
        if (i >= lines.size()) {
          format_error(n, 1, "evidence table is cut short");
        }
        auto const [m, line] = lines[i++];
        auto g = fields(line);
        if (g.size() != 3) {
          format_error(m, 1, "expected \"<index> <leaves> <distance|->\"");
        }
        Evidence e{parse_uint<std::uint64_t>(g[0], m, "an index"),
                   parse_uint<std::uint64_t>(g[1], m, "a leaf count"), std::nullopt};
        if (g[2] != "-") {
          e.distance = parse_uint<std::uint64_t>(g[2], m, "a distance");
        }
        c.evidence.push_back(e);
      }
    }
    next("end");
    return c;
  }

  std::string report_json(VerificationReport const& report) {
    nlohmann::json j;
    j["mode"] = std::string(name(report.mode));
    j["passed"] = report.passed();
    j["checks"] = nlohmann::json::array();
    for (auto const& c : report.checks) {
      j["checks"].push_back(
          {{"name", c.name}, {"status", std::string(name(c.status))}, {"detail", c.detail}});
    }
    return j.dump(2) + "\n";
  }

  std::string read_text_file(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw Error(ErrorKind::FormatError, "cannot open \"" + path + "\"");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  void write_text_file(std::string const& path, std::string const& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
      throw Error(ErrorKind::FormatError, "cannot write \"" + path + "\"");
    }
  }

}  // namespace thompson
