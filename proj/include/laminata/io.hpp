#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "laminata/circle.hpp"
#include "laminata/ledger.hpp"
#include "laminata/polynomial.hpp"

namespace laminata::io {

using json = nlohmann::ordered_json;

/// Unreadable or unwritable files; reported like bad input.
class IoError : public InputError {
 public:
  using InputError::InputError;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Throws InputError with the parser message on malformed text.
json parse_json(const std::string& text, const std::string& what);

struct LaminationFile {
  int degree = 2;
  std::vector<Polygon> generators;
};

LaminationFile parse_lamination(const json& j);
json to_json(const LaminationFile& f);
/// Boundary chords of every generator; a one-point generator gives a degenerate chord.
std::vector<Chord> chords_of(const LaminationFile& f);

struct CollectionFile {
  int degree = 2;
  int horizon = 64;
  std::vector<Polygon> polygons;
  int n_prime = 0;
};

/// A single collection object or an array of them; blank text yields no collections.
std::vector<CollectionFile> parse_collections(const std::string& text);

fsi::Portrait parse_portrait(const json& j);

ray::PolySpec parse_polynomial(const json& j);

json complex_json(ray::cplx z);

}  // namespace laminata::io
