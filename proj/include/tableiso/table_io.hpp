#pragma once

// Plain-text table files. A group file is
//
//   group <n>
//   <n rows of n entries>
//
// and a ring file is
//
//   ring <n>
//   <n rows of the addition table>
//
//   <n rows of the multiplication table>
//
// '#' starts a comment running to the end of the line. Whitespace is
// otherwise free-form; entries are 0-based element indices. Parsing
// validates the tables fully, so a successful read is always a group/ring.

#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "tableiso/cayley.hpp"
#include "tableiso/errors.hpp"
#include "tableiso/ring.hpp"

namespace tableiso {

using AnyTable = std::variant<CayleyTable, RingTable>;

namespace detail {

struct TableToken {
  std::string text;
  int line = 0;
};

inline std::vector<TableToken> tokenize_table_text(const std::string& text) {
  std::vector<TableToken> out;
  int line = 1;
  std::string cur;
  bool comment = false;
  auto flush = [&]() {
    if (!cur.empty()) out.push_back({cur, line});
    cur.clear();
  };
  for (char c : text) {
    if (c == '\n') {
      flush();
      comment = false;
      ++line;
    } else if (comment) {
    } else if (c == '#') {
      flush();
      comment = true;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      flush();
    } else {
      cur.push_back(c);
    }
  }
  flush();
  return out;
}

struct TableTokenStream {
  std::vector<TableToken> tokens;
  std::size_t pos = 0;

  const TableToken& next(const char* what) {
    if (pos >= tokens.size())
      fail(errc::syntax_error, std::string("unexpected end of input, expected ") + what);
    return tokens[pos++];
  }

  int next_int(const char* what) {
    const TableToken& tok = next(what);
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok.text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.text.size() || v < 0)
      fail(errc::syntax_error, "line " + std::to_string(tok.line) + ": expected " + what +
                                   ", got '" + tok.text + "'");
    return v;
  }
};

inline std::vector<std::vector<int>> read_square(TableTokenStream& stream, int n,
                                                 const char* what) {
  std::vector<std::vector<int>> raw(static_cast<std::size_t>(n),
                                    std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      raw[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = stream.next_int(what);
  return raw;
}

}  // namespace detail

inline AnyTable parse_table_text(const std::string& text, int max_order = kDefaultMaxOrder) {
  detail::TableTokenStream stream{detail::tokenize_table_text(text)};
  const detail::TableToken& kind = stream.next("'group' or 'ring'");
  if (kind.text != "group" && kind.text != "ring")
    fail(errc::syntax_error,
         "line " + std::to_string(kind.line) + ": expected 'group' or 'ring', got '" + kind.text + "'");
  int n = stream.next_int("the order");
  if (n < 1) fail(errc::invalid_order, "order must be at least 1");
  if (n > max_order)
    fail(errc::too_large,
         "order " + std::to_string(n) + " exceeds the cap of " + std::to_string(max_order));

  AnyTable out;
  if (kind.text == "group") {
    out = validate_cayley_table(n, detail::read_square(stream, n, "a table entry"));
  } else {
    std::vector<std::vector<int>> add = detail::read_square(stream, n, "an addition entry");
    std::vector<std::vector<int>> mul = detail::read_square(stream, n, "a multiplication entry");
    out = validate_ring(n, add, mul);
  }
  if (stream.pos < stream.tokens.size())
    fail(errc::syntax_error, "line " + std::to_string(stream.tokens[stream.pos].line) +
                                 ": trailing input starting at '" + stream.tokens[stream.pos].text + "'");
  return out;
}

inline AnyTable read_table_file(const std::string& path, int max_order = kDefaultMaxOrder) {
  std::ifstream in(path);
  if (!in) fail(errc::syntax_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_table_text(buf.str(), max_order);
}

inline std::string serialize_group(const CayleyTable& g) {
  std::ostringstream out;
  out << "group " << g.n << "\n";
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b) out << (b ? " " : "") << g.mul(a, b);
    out << "\n";
  }
  return out.str();
}

inline std::string serialize_ring(const RingTable& r) {
  std::ostringstream out;
  out << "ring " << r.n << "\n";
  for (int a = 0; a < r.n; ++a) {
    for (int b = 0; b < r.n; ++b) out << (b ? " " : "") << r.add.mul(a, b);
    out << "\n";
  }
  out << "\n";
  for (int a = 0; a < r.n; ++a) {
    for (int b = 0; b < r.n; ++b) out << (b ? " " : "") << r.mul(a, b);
    out << "\n";
  }
  return out.str();
}

inline std::string serialize_table(const AnyTable& t) {
  if (std::holds_alternative<CayleyTable>(t)) return serialize_group(std::get<CayleyTable>(t));
  return serialize_ring(std::get<RingTable>(t));
}

inline void write_table_file(const std::string& path, const AnyTable& t) {
  std::ofstream out(path);
  if (!out) fail(errc::syntax_error, "cannot write '" + path + "'");
  out << serialize_table(t);
}

}  // namespace tableiso
