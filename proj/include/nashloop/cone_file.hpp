#pragma once

// Plain-text cone files.
//
//   # comment (anywhere; also trailing)
//   dim 5                 first non-comment line
//   name B                optional metadata
//   char 3                optional metadata
//   1 0 0 0 0             one generator per line, d integers
//
// render() writes the canonical form: dim, name, char, generators.

#include <cstddef>
#include <istream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "nashloop/exactmath.hpp"

namespace nashloop {

class ConeFileError : public std::runtime_error {
 public:
  ConeFileError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct ConeFile {
  std::size_t dim = 0;
  std::vector<LatticeVector> generators;
  std::optional<std::string> name;
  std::optional<long long> characteristic;

  friend bool operator==(const ConeFile&, const ConeFile&) = default;
};

inline ConeFile parse_cone_file(std::istream& is) {
  ConeFile f;
  bool have_dim = false;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(is, raw)) {
    ++line;
    std::string text = raw.substr(0, raw.find('#'));
    std::istringstream ls(text);
    std::string first;
    if (!(ls >> first)) continue;

    if (!have_dim) {
      if (first != "dim") throw ConeFileError(line, "expected 'dim d' as the first line");
      long long d = -1;
      if (!(ls >> d) || d <= 0) throw ConeFileError(line, "dimension must be a positive integer");
      std::string extra;
      if (ls >> extra) throw ConeFileError(line, "unexpected text after dimension");
      f.dim = static_cast<std::size_t>(d);
      have_dim = true;
      continue;
    }
    if (first == "name") {
      std::string rest;
      std::getline(ls, rest);
      auto b = rest.find_first_not_of(" \t");
      auto e = rest.find_last_not_of(" \t\r");
      if (b == std::string::npos) throw ConeFileError(line, "empty name");
      f.name = rest.substr(b, e - b + 1);
      continue;
    }
    if (first == "char") {
      long long p = -1;
      if (!(ls >> p)) throw ConeFileError(line, "characteristic must be an integer");
      try {
        Characteristic{p};
      } catch (const InvalidCharacteristic& ex) {
        throw ConeFileError(line, ex.what());
      }
      f.characteristic = p;
      continue;
    }
    std::istringstream vs(text);
    std::vector<Integer> entries;
    std::string tok;
    while (vs >> tok) {
      std::size_t digits = (tok[0] == '-' || tok[0] == '+') ? 1 : 0;
      if (digits == tok.size() || tok.find_first_not_of("0123456789", digits) != std::string::npos)
        throw ConeFileError(line, "not an integer: '" + tok + "'");
      entries.emplace_back(Integer(tok[0] == '+' ? tok.substr(1) : tok));
    }
    if (entries.size() != f.dim)
      throw ConeFileError(line, "generator has " + std::to_string(entries.size()) +
                                    " entries, expected " + std::to_string(f.dim));
    f.generators.emplace_back(std::move(entries));
  }
  if (!have_dim) throw ConeFileError(line, "missing 'dim d' line");
  return f;
}

inline ConeFile parse_cone_file(const std::string& text) {
  std::istringstream is(text);
  return parse_cone_file(is);
}

inline std::string render_cone_file(const ConeFile& f) {
  std::ostringstream os;
  os << "dim " << f.dim << '\n';
  if (f.name) os << "name " << *f.name << '\n';
  if (f.characteristic) os << "char " << *f.characteristic << '\n';
  for (const auto& g : f.generators) {
    for (std::size_t i = 0; i < g.dim(); ++i) os << (i ? " " : "") << g[i];
    os << '\n';
  }
  return os.str();
}

inline ConeFile cone_file_from_matrix(const IntMatrix& columns, std::optional<std::string> name = {},
                                      std::optional<long long> p = {}) {
  return ConeFile{columns.rows(), columns.columns(), std::move(name), p};
}

}  // namespace nashloop
