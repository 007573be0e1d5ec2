// Command-line front end. Exit status: 0 success, 1 verification failure,
// 2 input error, 3 resource limit.
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "thompson/cayley.hpp"
#include "thompson/error.hpp"
#include "thompson/io.hpp"
#include "thompson/synthesis.hpp"
#include "thompson/witness.hpp"

using namespace thompson;

namespace {

  constexpr int exit_ok = 0;
  constexpr int exit_failed = 1;
  constexpr int exit_input = 2;
  constexpr int exit_resource = 3;

  struct Options {
    std::string alphabet = "A";
    std::optional<unsigned> radius;
    unsigned cap = 8;
    std::string constants;
    bool strict = false;
    std::uint64_t seed = 0;
    std::string mode = "lemmas";
    std::string out;
    bool word = false;
    std::vector<std::string> inputs;
    std::optional<std::uint64_t> lambda;
    unsigned n_max = 6;
    std::string json;
  };

  std::string read_input(std::string const& arg) {
    if (arg == "-") {
      std::ostringstream s;
      s << std::cin.rdbuf();
      return s.str();
    }
    return read_text_file(arg);
  }

  // An element argument: a file (or '-') in element format, or a word when
  // --word is given.
  Element element_arg(Options const& o, std::string const& arg) {
    if (o.word) {
      return eval_word(parse_word(arg));
    }
    auto p = parse_element(read_input(arg));
    if (p.was_reduced) {
      std::cerr << "note: " << arg << " was reduced from " << p.input_pairs << " to "
                << p.element.num_leaves() << " pairs\n";
    }
    return p.element;
  }

  void emit(Options const& o, std::string const& text) {
    if (o.out.empty()) {
      std::cout << text;
    } else {
      write_text_file(o.out, text);
    }
  }

  Alphabet alphabet(Options const& o) {
    return parse_alphabet(o.alphabet);
  }

  // "c=1/4,C=3,M=4,Q=8"; missing keys keep the scaled values. With --strict,
  // M and Q follow from c and C, which default to the ball estimate.
  WitnessConstants constants(Options const& o) {
    auto k = WitnessConstants::scaled();
    std::optional<Rational> c, C;
    std::optional<std::uint64_t> M, Q;
    std::string const text = o.constants;
    std::size_t pos = 0;
    while (pos < text.size()) {
      auto comma = text.find(',', pos);
      auto item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      pos = comma == std::string::npos ? text.size() : comma + 1;
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw Error(ErrorKind::FormatError, "--constants expects key=value pairs");
      }
      auto key = item.substr(0, eq), val = item.substr(eq + 1);
      auto rational = [&] {
        auto slash = val.find('/');
        std::int64_t n = std::stoll(val.substr(0, slash));
        std::int64_t d = slash == std::string::npos ? 1 : std::stoll(val.substr(slash + 1));
        if (d == 0) {
          throw Error(ErrorKind::FormatError, "zero denominator in --constants");
        }
        return Rational(n, d);
      };
      try {
        if (key == "c") {
          c = rational();
        } else if (key == "C") {
          C = rational();
        } else if (key == "M") {
          M = std::stoull(val);
        } else if (key == "Q") {
          Q = std::stoull(val);
        } else {
          throw Error(ErrorKind::FormatError, "unknown constant \"" + key + "\"");
        }
      } catch (std::logic_error const&) {
        throw Error(ErrorKind::FormatError, "bad value for " + key + " in --constants");
      }
    }
    if (o.strict) {
      if (M || Q) {
        throw Error(ErrorKind::FormatError, "--strict derives M and Q; give only c and C");
      }
      if (!c || !C) {
        Alphabet const a = alphabet(o);
        auto e = estimate_constants(a, o.radius.value_or(default_radius(a)));
        std::cerr << "estimate over " << name(a) << " radius " << e.radius << ": c=" << e.c_hat
                  << " C=" << e.C_hat << "\n";
        c = c.value_or(e.c_hat);
        C = C.value_or(e.C_hat);
      }
      return WitnessConstants::strict_from(*c, *C);
    }
    return WitnessConstants::custom(c.value_or(k.c), C.value_or(k.C), M.value_or(k.M),
                                    Q.value_or(k.Q));
  }

  WitnessOptions witness_options(Options const& o) {
    WitnessOptions w;
    w.bfs_cap = o.cap;
    w.lambda = o.lambda;
    return w;
  }

  int run(std::string const& command, Options const& o) {
    if (command == "reduce" || command == "inv") {
      Element g = element_arg(o, o.inputs.at(0));
      emit(o, serialize_element(command == "inv" ? invert(g) : g));
    } else if (command == "mul") {
      Element g;
      for (auto const& in : o.inputs) {
        g = multiply(g, element_arg(o, in));
      }
      emit(o, serialize_element(g));
    } else if (command == "eval") {
      GroupWord w(alphabet(o));
      for (auto const& in : o.inputs) {
        w.append(parse_word(in, alphabet(o)));
      }
      emit(o, serialize_element(eval_word(w)));
    } else if (command == "len") {
      Element g = element_arg(o, o.inputs.at(0));
      auto len = word_length(g, alphabet(o), o.cap);
      emit(o, len ? std::to_string(*len) + "\n" : "> " + std::to_string(o.cap) + "\n");
    } else if (command == "ball") {
      Alphabet const a = alphabet(o);
      emit(o, serialize_ball(enumerate_ball(a, o.radius.value_or(default_radius(a)))));
    } else if (command == "constants") {
      Alphabet const a = alphabet(o);
      auto e = estimate_constants(a, o.radius.value_or(default_radius(a)));
      std::ostringstream s;
      s << "alphabet " << name(a) << "\nradius " << e.radius << "\nsample " << e.sample_size
        << "\nc_hat " << e.c_hat << "\nC_hat " << e.C_hat << "\nargmin "
        << serialize_element_inline(e.argmin) << "\nargmax " << serialize_element_inline(e.argmax)
        << "\n";
      emit(o, s.str());
    } else if (command == "profile") {
      DivergenceOptions d;
      d.seed = o.seed;
      emit(o, divergence_csv(divergence_profile(alphabet(o), o.n_max, o.cap, d)));
    } else if (command == "witness") {
      auto cert = witness(element_arg(o, o.inputs.at(0)), constants(o), alphabet(o),
                          witness_options(o));
      emit(o, serialize_certificate(cert));
    } else if (command == "connect") {
      if (o.inputs.size() != 2) {
        throw Error(ErrorKind::FormatError, "connect takes two elements");
      }
      auto cert = connect(element_arg(o, o.inputs[0]), element_arg(o, o.inputs[1]), constants(o),
                          alphabet(o), witness_options(o));
      emit(o, serialize_certificate(cert));
    } else if (command == "verify") {
      auto cert = parse_certificate(read_input(o.inputs.at(0)));
      VerifyOptions v;
      v.bfs_cap = o.cap;
      auto report = verify(cert, parse_verify_mode(o.mode), v);
      emit(o, report.to_text());
      if (!o.json.empty()) {
        write_text_file(o.json, report_json(report));
      }
      return report.passed() ? exit_ok : exit_failed;
    }
    return exit_ok;
  }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tree-pair diagrams for Thompson's groups F, T and V"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool takes_inputs) {
    sub->add_option("--alphabet", o.alphabet, "generating set: A, B or C")
        ->check(CLI::IsMember({"A", "B", "C"}));
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_flag("--word", o.word, "element arguments are words, not files");
    if (takes_inputs) {
      sub->add_option("inputs", o.inputs, "element files ('-' for stdin) or words")->required();
    }
  };
  auto witness_flags = [&](CLI::App* sub) {
    sub->add_option("--constants", o.constants, "overrides: c=..,C=..,M=..,Q=..");
    sub->add_flag("--strict", o.strict, "M and Q from the strict inequalities");
    sub->add_option("--radius", o.radius, "ball radius for the strict estimate")
        ->check(CLI::PositiveNumber);
    sub->add_option("--lambda", o.lambda, "value used for |g|")->check(CLI::PositiveNumber);
    sub->add_option("--cap", o.cap, "search cap for exact lengths and geodesics")
        ->check(CLI::PositiveNumber);
  };

  auto* reduce = app.add_subcommand("reduce", "reduce a diagram");
  common(reduce, true);
  auto* mul = app.add_subcommand("mul", "product, left to right");
  common(mul, true);
  auto* inv = app.add_subcommand("inv", "inverse");
  common(inv, true);
  auto* eval = app.add_subcommand("eval", "evaluate a word");
  eval->add_option("--alphabet", o.alphabet)->check(CLI::IsMember({"A", "B", "C"}));
  eval->add_option("--out", o.out);
  eval->add_option("words", o.inputs, "word, e.g. \"x0^2 x1^-1\"")->required();
  auto* len = app.add_subcommand("len", "exact word length up to --cap");
  common(len, true);
  len->add_option("--cap", o.cap)->check(CLI::PositiveNumber);
  auto* ball = app.add_subcommand("ball", "enumerate a ball");
  common(ball, false);
  ball->add_option("--radius", o.radius)->check(CLI::PositiveNumber);
  auto* cons = app.add_subcommand("constants", "estimate c and C from a ball");
  common(cons, false);
  cons->add_option("--radius", o.radius)->check(CLI::PositiveNumber);
  auto* profile = app.add_subcommand("profile", "divergence profile as CSV");
  common(profile, false);
  profile->add_option("--nmax", o.n_max, "largest sphere radius")->check(CLI::PositiveNumber);
  profile->add_option("--cap", o.cap, "cap on avoidant path lengths")->check(CLI::PositiveNumber);
  profile->add_option("--seed", o.seed, "seed for sampled rows");
  o.cap = 8;
  auto* wit = app.add_subcommand("witness", "witness path certificate");
  common(wit, true);
  witness_flags(wit);
  auto* con = app.add_subcommand("connect", "connection certificate between two elements");
  common(con, true);
  witness_flags(con);
  auto* ver = app.add_subcommand("verify", "check a certificate");
  ver->add_option("certificate", o.inputs, "certificate file")->required()->expected(1);
  ver->add_option("--mode", o.mode)->check(CLI::IsMember({"exact", "leafbound", "lemmas"}));
  ver->add_option("--cap", o.cap, "search cap for exact distances")->check(CLI::PositiveNumber);
  ver->add_option("--out", o.out, "report file (default stdout)");
  ver->add_option("--json", o.json, "also write the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    int const code = app.exit(e);
    return code == 0 ? exit_ok : exit_input;
  }
  std::string const command = app.get_subcommands().front()->get_name();
  if (command == "profile" && !profile->count("--cap")) {
    o.cap = 40;
  }
  if (command == "verify" && !ver->count("--cap")) {
    o.cap = 10;
  }
  try {
    return run(command, o);
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::ResourceLimit ? exit_resource : exit_input;
  } catch (std::out_of_range const&) {
    std::cerr << "error: missing argument\n";
    return exit_input;
  } catch (std::bad_alloc const&) {
    std::cerr << "error: out of memory\n";
    return exit_resource;
  }
}
