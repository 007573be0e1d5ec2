#include "thompson/cayley.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>

#include "thompson/error.hpp"

namespace thompson {

  namespace {

    std::vector<Element const*> letter_elements(Alphabet a) {
      std::vector<Element const*> out;
      for (auto const& l : unit_letters(a)) {
        out.push_back(&unit_element(l.base, l.exponent < 0));
      }
      return out;
    }

    // Membership test for the closed ball of radius r.
    bool in_ball(BallIndex const& ball, std::string const& key, unsigned r) {
      auto id = ball.find_key(key);
      return id && ball.distance(*id) <= r;
    }

  }  // namespace

  unsigned default_radius(Alphabet a) noexcept {
    switch (a) {
      case Alphabet::A:
        return 8;
      case Alphabet::B:
        return 6;
      case Alphabet::C:
        return 5;
    }
    return 5;
  }

  std::optional<std::uint32_t> BallIndex::find_key(std::string const& key) const {
    auto it = _index.find(key);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::optional<std::uint32_t> BallIndex::find(Element const& g) const {
    return find_key(g.encode());
  }

  std::uint32_t BallIndex::add(std::string key, unsigned dist, int letter, std::uint32_t parent,
                               std::uint32_t leaves) {
    auto const id = static_cast<std::uint32_t>(_keys.size());
    auto [it, inserted] = _index.emplace(std::move(key), id);
    _keys.push_back(&it->first);
    _dist.push_back(static_cast<std::uint8_t>(dist));
    _parent_letter.push_back(static_cast<std::int8_t>(letter));
    _parent.push_back(parent);
    _leaves.push_back(leaves);
    return id;
  }

  GroupWord BallIndex::geodesic(std::uint32_t id) const {
    auto const letters = unit_letters(_alphabet);
    std::vector<Letter> rev;
    while (_parent_letter[id] >= 0) {
      rev.push_back(letters[static_cast<std::size_t>(_parent_letter[id])]);
      id = _parent[id];
    }
    GroupWord w(_alphabet);
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) {
      w.push(it->base, it->exponent);
    }
    return w;
  }

  std::pair<std::uint32_t, std::uint32_t> BallIndex::sphere(unsigned r) const {
    if (r > _radius) {
      return {0, 0};
    }
    return {_level_start[r], _level_start[r + 1]};
  }

  BallIndex enumerate_ball(Alphabet alphabet, unsigned radius, std::size_t node_cap,
                           bool adjacency) {
    if (radius > 250) {
      throw Error(ErrorKind::ResourceLimit, "ball radius too large");
    }
    BallIndex b;
    b._alphabet = alphabet;
    b._radius = radius;
    auto const letters = letter_elements(alphabet);
    b._letters = letters.size();
    b.add(Element().encode(), 0, -1, BallIndex::none, 1);
    b._level_start.push_back(0);
    for (unsigned r = 0; r <= radius; ++r) {
      auto const begin = b._level_start[r];
      auto const end = static_cast<std::uint32_t>(b._keys.size());
      b._level_start.push_back(end);
      bool const last = r == radius;
      if (last && !adjacency) {
        break;
      }
      for (std::uint32_t id = begin; id < end; ++id) {
        Element const g = b.element(id);
        for (std::size_t k = 0; k < letters.size(); ++k) {
          Element h = multiply(g, *letters[k]);
          std::string key = h.encode();
          auto found = b.find_key(key);
          std::uint32_t nb = found ? *found : BallIndex::none;
          if (!found && !last) {
            if (b._keys.size() >= node_cap) {
              throw Error(ErrorKind::ResourceLimit,
                          "ball enumeration exceeded " + std::to_string(node_cap) + " nodes");
            }
            nb = b.add(std::move(key), r + 1, static_cast<int>(k), id,
                       static_cast<std::uint32_t>(h.num_leaves()));
          }
          if (adjacency) {
            b._adj.push_back(nb);
          }
        }
      }
    }
    return b;
  }

  std::shared_ptr<BallIndex const> cached_ball(Alphabet alphabet, unsigned radius, bool adjacency) {
    static std::mutex mutex;
    static std::map<std::pair<Alphabet, bool>, std::shared_ptr<BallIndex const>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    for (bool adj : {true, false}) {
      if (adjacency && !adj) {
        continue;
      }
      auto it = cache.find({alphabet, adj});
      if (it != cache.end() && it->second->radius() >= radius) {
        return it->second;
      }
    }
    auto ball = std::make_shared<BallIndex const>(
        enumerate_ball(alphabet, radius, default_node_cap, adjacency));
    cache[{alphabet, adjacency}] = ball;
    return ball;
  }

  namespace {

    // Splits a = u v with u on a sphere of the ball and v inside it.
    // Returns (u id, v id, |a|) for the smallest |a| <= cap.
    std::optional<std::tuple<std::uint32_t, std::uint32_t, unsigned>> meet_in_the_middle(
        Element const& a, Alphabet alphabet, unsigned cap) {
      unsigned const half = (cap + 1) / 2;
      auto ball = cached_ball(alphabet, std::min(half, cap));
      unsigned const r = std::min(ball->radius(), cap);
      if (auto id = ball->find(a); id && ball->distance(*id) <= r) {
        return std::tuple{std::uint32_t(0), *id, ball->distance(*id)};
      }
      for (unsigned k = r + 1; k <= cap; ++k) {
        auto [lo, hi] = ball->sphere(k - r);
        for (std::uint32_t u = lo; u < hi; ++u) {
          Element v = multiply(invert(ball->element(u)), a);
          if (auto id = ball->find(v); id && ball->distance(*id) <= r) {
            return std::tuple{u, *id, k};
          }
        }
      }
      return std::nullopt;
    }

  }  // namespace

  std::optional<unsigned> word_length(Element const& a, Alphabet alphabet, unsigned cap) {
    if (alphabet == Alphabet::A && classify(a) != Membership::F) {
      return std::nullopt;
    }
    if (alphabet == Alphabet::B && classify(a) == Membership::V_only) {
      return std::nullopt;
    }
    auto m = meet_in_the_middle(a, alphabet, cap);
    if (!m) {
      return std::nullopt;
    }
    return std::get<2>(*m);
  }

  std::optional<GroupWord> geodesic(Element const& a, Alphabet alphabet, unsigned cap) {
    if (!word_length(a, alphabet, cap)) {
      return std::nullopt;
    }
    auto [u, v, len] = *meet_in_the_middle(a, alphabet, cap);
    auto ball = cached_ball(alphabet, std::min((cap + 1) / 2, cap));
    GroupWord w = ball->geodesic(u) * ball->geodesic(v);
    w.set_alphabet(alphabet);
    return w;
  }

  std::optional<std::uint64_t> avoidant_distance(Element const& a, Element const& b,
                                                 unsigned forbidden_radius, Alphabet alphabet,
                                                 unsigned cap) {
    auto forbidden = cached_ball(alphabet, forbidden_radius);
    std::string const ka = a.encode(), kb = b.encode();
    if (in_ball(*forbidden, ka, forbidden_radius) || in_ball(*forbidden, kb, forbidden_radius)) {
      throw Error(ErrorKind::EndpointForbidden, "endpoint lies in the forbidden ball");
    }
    if (ka == kb) {
      return 0;
    }
    auto const letters = letter_elements(alphabet);
    struct Side {
      std::unordered_map<std::string, std::uint32_t> seen;
      std::vector<Element> frontier;
      std::uint32_t depth = 0;
    };
    Side sa, sb;
    sa.seen.emplace(ka, 0);
    sa.frontier.push_back(a);
    sb.seen.emplace(kb, 0);
    sb.frontier.push_back(b);
    while (true) {
      if (sa.depth + sb.depth >= cap) {
        return std::nullopt;
      }
      Side& s = sa.frontier.size() <= sb.frontier.size() ? sa : sb;
      Side& o = &s == &sa ? sb : sa;
      std::vector<Element> next;
      std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
      for (Element const& g : s.frontier) {
        for (Element const* l : letters) {
          Element h = multiply(g, *l);
          std::string key = h.encode();
          if (s.seen.count(key) != 0 || in_ball(*forbidden, key, forbidden_radius)) {
            continue;
          }
          if (auto it = o.seen.find(key); it != o.seen.end()) {
            best = std::min<std::uint64_t>(best, s.depth + 1 + it->second);
          }
          s.seen.emplace(std::move(key), s.depth + 1);
          next.push_back(std::move(h));
        }
      }
      ++s.depth;
      s.frontier = std::move(next);
      if (best != std::numeric_limits<std::uint64_t>::max()) {
        return best <= cap ? std::optional<std::uint64_t>(best) : std::nullopt;
      }
      if (s.frontier.empty()) {
        return std::nullopt;
      }
    }
  }

  std::vector<DivergenceRow> divergence_profile(Alphabet alphabet, unsigned n_max, unsigned cap,
                                                DivergenceOptions const& opt) {
    if (n_max < 1) {
      throw Error(ErrorKind::FormatError, "n_max must be at least 1");
    }
    unsigned const graph_radius = n_max + opt.graph_radius_slack;
    auto graph = cached_ball(alphabet, graph_radius, true);
    unsigned const gr = graph->radius();
    std::size_t const nl = graph->num_letters();
    std::mt19937_64 rng(opt.seed);
    std::vector<DivergenceRow> rows;
    constexpr std::uint32_t unreached = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> dist(graph->size(), unreached);
    std::vector<std::uint32_t> touched;

    struct Open {
      std::uint32_t a, b, upper;
    };

    for (unsigned n = 1; n <= n_max; ++n) {
      DivergenceRow row;
      row.n = n;
      row.forbidden_radius = n / 4;
      auto const f = row.forbidden_radius;
      auto [lo, hi] = graph->sphere(n);
      row.sphere_size = hi - lo;
      std::map<std::uint32_t, std::vector<std::uint32_t>> pairs;
      if (row.sphere_size <= opt.exact_threshold) {
        for (std::uint32_t x = lo; x < hi; ++x) {
          for (std::uint32_t y = x + 1; y < hi; ++y) {
            pairs[x].push_back(y);
          }
        }
      } else {
        row.exact = false;
        std::uniform_int_distribution<std::uint32_t> pick(lo, hi - 1);
        for (std::size_t s = 0; s < opt.samples; ++s) {
          std::uint32_t x = pick(rng), y = pick(rng);
          while (y == x) {
            y = pick(rng);
          }
          pairs[std::min(x, y)].push_back(std::max(x, y));
        }
      }
      std::uint64_t const horizon = 2 * (gr + 1 - n);
      std::uint64_t best = 0;  // certified maximum so far
      std::vector<Open> open;
      for (auto& [src, targets] : pairs) {
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        row.pairs += targets.size();
        std::size_t remaining = targets.size();
        std::vector<std::uint32_t> frontier{src};
        dist[src] = 0;
        touched.push_back(src);
        for (std::uint32_t d = 0; remaining > 0 && !frontier.empty(); ++d) {
          std::vector<std::uint32_t> next;
          for (auto v : frontier) {
            for (std::size_t k = 0; k < nl; ++k) {
              auto w = graph->neighbour(v, k);
              if (w == BallIndex::none || dist[w] != unreached || graph->distance(w) <= f) {
                continue;
              }
              dist[w] = d + 1;
              touched.push_back(w);
              next.push_back(w);
              if (std::binary_search(targets.begin(), targets.end(), w)) {
                --remaining;
              }
            }
          }
          frontier = std::move(next);
        }
        for (auto t : targets) {
          if (dist[t] <= horizon) {
            best = std::max<std::uint64_t>(best, dist[t]);
          } else {
            open.push_back({src, t, dist[t]});
          }
        }
        for (auto v : touched) {
          dist[v] = unreached;
        }
        touched.clear();
      }
      // Pairs whose in-ball value may overstate the distance, largest first.
      std::stable_sort(open.begin(), open.end(),
                       [](Open const& x, Open const& y) { return x.upper > y.upper; });
      std::uint64_t upper = best;
      for (auto const& p : open) {
        if (p.upper <= best) {
          break;
        }
        if (row.fallback_pairs >= opt.fallback_limit) {
          upper = std::max<std::uint64_t>(upper, p.upper);
          row.certified = false;
          break;
        }
        ++row.fallback_pairs;
        unsigned const limit = p.upper == unreached ? cap : std::min<unsigned>(cap, p.upper);
        auto r = avoidant_distance(graph->element(p.a), graph->element(p.b), f, alphabet, limit);
        if (r) {
          best = std::max(best, *r);
        } else if (limit < p.upper) {
          best = std::max<std::uint64_t>(best, std::uint64_t(cap) + 1);
          row.lower_bound = true;
        }
      }
      if (row.certified) {
        row.div = row.div_lower = best;
      } else {
        row.div_lower = std::max(best, horizon);
        row.div = std::max(upper, best);
      }
      if (row.lower_bound) {
        row.div = row.div_lower = std::max(row.div, std::uint64_t(cap) + 1);
        row.certified = false;
      }
      rows.push_back(row);
    }
    return rows;
  }

  std::string divergence_csv(std::vector<DivergenceRow> const& rows) {
    std::string out = "n,div,exact_or_sampled\n";
    for (auto const& r : rows) {
      out += std::to_string(r.n) + "," + std::to_string(r.div) + ","
             + (r.exact ? "exact" : "sampled");
      if (r.lower_bound) {
        out += "-lower-bound";
      } else if (!r.certified) {
        out += "-upper-bound";
      }
      out += "\n";
    }
    return out;
  }

  ConstantsEstimate estimate_constants(Alphabet alphabet, unsigned radius) {
    if (radius < 1) {
      throw Error(ErrorKind::FormatError, "radius must be at least 1");
    }
    auto ball = cached_ball(alphabet, radius);
    ConstantsEstimate est;
    est.radius = radius;
    std::uint32_t lo_id = 0, hi_id = 0;
    bool first = true;
    auto [begin, end] = ball->sphere(0);
    (void) begin;
    for (std::uint32_t id = end; id < ball->size() && ball->distance(id) <= radius; ++id) {
      Rational q(ball->distance(id), ball->num_leaves(id));
      if (first || q < est.c_hat) {
        est.c_hat = q;
        lo_id = id;
      }
      if (first || q > est.C_hat) {
        est.C_hat = q;
        hi_id = id;
      }
      first = false;
      ++est.sample_size;
    }
    est.argmin = ball->element(lo_id);
    est.argmax = ball->element(hi_id);
    return est;
  }

}  // namespace thompson
