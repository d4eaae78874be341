#pragma once

#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "phantom/breaker.hpp"
#include "phantom/config.hpp"
#include "phantom/errors.hpp"
#include "phantom/params.hpp"

namespace phantom {

/// One frozen exact value. File format, one record per line:
///   game n a b k maker breaker sampling numerator/denominator kind
/// where kind is "forced" (value known by hand) or "derived" (oracle output).
/// Blank lines and lines starting with '#' are ignored.
struct ExactFixture {
  GameConfig cfg;
  std::string maker;
  std::string breaker;
  Sampling sampling = Sampling::KnowledgeAware;
  Rational value;
  std::string kind;
};

inline Sampling parse_sampling(const std::string& s) {
  if (s == "knowledge-aware" || s == "ka") return Sampling::KnowledgeAware;
  if (s == "strict") return Sampling::Strict;
  throw ConfigError("unknown sampling mode '" + s + "' (knowledge-aware | strict)");
}

inline Rational parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(boost::multiprecision::cpp_int(s));
  return Rational(boost::multiprecision::cpp_int(s.substr(0, slash)), boost::multiprecision::cpp_int(s.substr(slash + 1)));
}

inline std::vector<ExactFixture> read_fixtures(std::istream& in) {
  std::vector<ExactFixture> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string game, sampling, value;
    ExactFixture f;
    if (!(ls >> game >> f.cfg.n >> f.cfg.a >> f.cfg.b >> f.cfg.k >> f.maker >> f.breaker >> sampling >> value >> f.kind))
      throw ConfigError("fixture line " + std::to_string(lineno) + " is malformed");
    const auto g = parse_game(game);
    if (!g) throw ConfigError("fixture line " + std::to_string(lineno) + ": unknown game '" + game + "'");
    f.cfg.game = *g;
    f.sampling = parse_sampling(sampling);
    try {
      f.value = parse_fraction(value);
    } catch (const std::exception&) {
      throw ConfigError("fixture line " + std::to_string(lineno) + ": bad value '" + value + "'");
    }
    out.push_back(std::move(f));
  }
  return out;
}

inline std::vector<ExactFixture> read_fixture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fixture file " + path);
  return read_fixtures(in);
}

}  // namespace phantom
