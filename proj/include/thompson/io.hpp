#ifndef THOMPSON_IO_HPP_
#define THOMPSON_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "cayley.hpp"
#include "element.hpp"
#include "witness.hpp"

namespace thompson {

  // Element text: one `u -> v` pair per line (or separated by ';'), the
  // empty word written `-`, '#' starting a comment. Parsing validates the
  // diagram and reduces it.
  struct ParsedElement {
    Element element;
    std::size_t input_pairs = 0;
    bool was_reduced = false;  // the input had dipoles
  };

  ParsedElement parse_element(std::string_view text);
  std::string serialize_element(Element const& a);
  // Same pairs on one line, separated by "; ".
  std::string serialize_element_inline(Element const& a);

  // Ball file: a header, then one line per member in id order:
  //   <id> <distance> <parent> <letter> <leaves> <element inline>
  // with parent and letter `-` for the identity. Adjacency is not stored.
  std::string serialize_ball(BallIndex const& ball);
  BallIndex parse_ball(std::string_view text);
  void write_ball_file(BallIndex const& ball, std::string const& path);
  BallIndex read_ball_file(std::string const& path);

  // Certificate text; see README for the layout. Targets with more than
  // inline_target_limit leaves are stored as a word and evaluated on read.
  inline constexpr std::size_t inline_target_limit = 2000;
  std::string serialize_certificate(PathCertificate const& cert);
  PathCertificate parse_certificate(std::string_view text);

  std::string report_json(VerificationReport const& report);

  std::string read_text_file(std::string const& path);
  void write_text_file(std::string const& path, std::string const& text);

}  // namespace thompson

#endif  // THOMPSON_IO_HPP_
