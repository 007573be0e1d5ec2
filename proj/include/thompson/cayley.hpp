#ifndef THOMPSON_CAYLEY_HPP_
#define THOMPSON_CAYLEY_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "element.hpp"
#include "generators.hpp"

namespace thompson {

  // Default radii for exact work: 8 for A, 6 for B, 5 for C.
  unsigned default_radius(Alphabet a) noexcept;

  inline constexpr std::size_t default_node_cap = 5'000'000;

  // The ball of a given radius in the Cayley graph, enumerated breadth
  // first. Ids follow the enumeration order, so they are sorted by distance,
  // and within a level by discovery (parent id, then letter order).
  class BallIndex {
   public:
    static constexpr std::uint32_t none = std::numeric_limits<std::uint32_t>::max();

    [[nodiscard]] Alphabet alphabet() const noexcept {
      return _alphabet;
    }
    [[nodiscard]] unsigned radius() const noexcept {
      return _radius;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _keys.size();
    }

    [[nodiscard]] std::optional<std::uint32_t> find(Element const& g) const;
    [[nodiscard]] std::optional<std::uint32_t> find_key(std::string const& key) const;
    [[nodiscard]] Element element(std::uint32_t id) const {
      return Element::decode(*_keys[id]);
    }
    [[nodiscard]] std::string const& key(std::uint32_t id) const {
      return *_keys[id];
    }
    [[nodiscard]] unsigned distance(std::uint32_t id) const {
      return _dist[id];
    }
    [[nodiscard]] std::uint32_t num_leaves(std::uint32_t id) const {
      return _leaves[id];
    }
    // Index into unit_letters(alphabet()) of the last letter of the
    // geodesic to id; -1 for the identity.
    [[nodiscard]] int parent_letter(std::uint32_t id) const {
      return _parent_letter[id];
    }
    [[nodiscard]] std::uint32_t parent(std::uint32_t id) const {
      return _parent[id];
    }
    [[nodiscard]] GroupWord geodesic(std::uint32_t id) const;

    // Ids at distance exactly r, as a range [begin, end).
    [[nodiscard]] std::pair<std::uint32_t, std::uint32_t> sphere(unsigned r) const;

    // Neighbour of id along unit letter k, or `none` if it lies outside the
    // ball. Only present when enumerated with adjacency.
    [[nodiscard]] bool has_adjacency() const noexcept {
      return !_adj.empty();
    }
    [[nodiscard]] std::uint32_t neighbour(std::uint32_t id, std::size_t k) const {
      return _adj[id * _letters + k];
    }
    [[nodiscard]] std::size_t num_letters() const noexcept {
      return _letters;
    }

   private:
    friend BallIndex enumerate_ball(Alphabet, unsigned, std::size_t, bool);
    friend BallIndex parse_ball(std::string_view text);

    std::uint32_t add(std::string key, unsigned dist, int letter, std::uint32_t parent,
                      std::uint32_t leaves);

    Alphabet _alphabet = Alphabet::A;
    unsigned _radius = 0;
    std::size_t _letters = 0;
    std::unordered_map<std::string, std::uint32_t> _index;
    std::vector<std::string const*> _keys;
    std::vector<std::uint8_t> _dist;
    std::vector<std::int8_t> _parent_letter;
    std::vector<std::uint32_t> _parent;
    std::vector<std::uint32_t> _leaves;
    std::vector<std::uint32_t> _level_start;  // _level_start[r] = first id at distance r
    std::vector<std::uint32_t> _adj;
  };

  // Throws Error(ResourceLimit) when more than node_cap elements would be
  // stored.
  BallIndex enumerate_ball(Alphabet alphabet, unsigned radius,
                           std::size_t node_cap = default_node_cap, bool adjacency = false);

  // Process-wide cache. Returns a ball of radius at least `radius` (callers
  // must compare distances against their own radius).
  std::shared_ptr<BallIndex const> cached_ball(Alphabet alphabet, unsigned radius,
                                               bool adjacency = false);

  // Exact |a| when it is at most cap. Balls beyond the default radius are
  // avoided by meeting in the middle with a ball of radius ceil(cap / 2).
  std::optional<unsigned> word_length(Element const& a, Alphabet alphabet, unsigned cap);
  std::optional<GroupWord> geodesic(Element const& a, Alphabet alphabet, unsigned cap);

  // Length of a shortest path from a to b through vertices g with
  // |g| > forbidden_radius. Throws Error(EndpointForbidden) if a or b lies
  // in the closed forbidden ball; absent if longer than cap.
  std::optional<std::uint64_t> avoidant_distance(Element const& a, Element const& b,
                                                 unsigned forbidden_radius, Alphabet alphabet,
                                                 unsigned cap);

  struct DivergenceRow {
    unsigned n = 0;
    unsigned forbidden_radius = 0;
    std::uint64_t div = 0;        // upper bound; the value itself when certified
    std::uint64_t div_lower = 0;  // certified lower bound
    bool exact = true;            // all pairs (otherwise sampled)
    bool certified = true;        // div_lower == div
    bool lower_bound = false;     // some pair exceeded the cap
    std::uint64_t sphere_size = 0;
    std::uint64_t pairs = 0;
    std::uint64_t fallback_pairs = 0;  // pairs settled by unrestricted search
  };

  struct DivergenceOptions {
    std::size_t exact_threshold = 2000;  // sphere size up to which all pairs are used
    std::size_t samples = 20000;         // pairs drawn otherwise
    std::uint64_t seed = 0;
    unsigned graph_radius_slack = 6;     // extra radius of the precomputed graph
    std::size_t fallback_limit = 200;    // unrestricted searches per row
  };

  // div(n) = max over pairs on the sphere of radius n of the avoidant
  // distance with forbidden radius floor(n / 4).
  //
  // Every pair is first searched inside a ball of radius R = n_max + slack
  // with adjacency. A value U found there is exact when U <= 2(R + 1 - n),
  // since a shorter path leaving the ball needs at least that many steps.
  // The remaining pairs are settled by unrestricted bidirectional search in
  // decreasing order of U, but only while they could still raise the
  // maximum, and at most fallback_limit times; after that div is reported
  // as an upper bound with a certified lower bound.
  std::vector<DivergenceRow> divergence_profile(Alphabet alphabet, unsigned n_max, unsigned cap,
                                                DivergenceOptions const& opt = {});
  std::string divergence_csv(std::vector<DivergenceRow> const& rows);

  struct ConstantsEstimate {
    Rational c_hat;
    Rational C_hat;
    unsigned radius = 0;
    std::uint64_t sample_size = 0;
    Element argmin;
    Element argmax;
  };

  // min and max of |g| / N(g) over the non-identity members of the ball.
  ConstantsEstimate estimate_constants(Alphabet alphabet, unsigned radius);

}  // namespace thompson

#endif  // THOMPSON_CAYLEY_HPP_
