#include "gmtk/dd_io.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace gmtk {

namespace {

struct Tokenizer {
  std::istringstream stream;
  int line;

  Tokenizer(const std::string& text, int line) : stream(text), line(line) {}

  bool next(std::string& out) { return static_cast<bool>(stream >> out); }

  std::string require(const char* what) {
    std::string tok;
    if (!next(tok)) {
      throw ParseError(line, std::string("missing ") + what);
    }
    return tok;
  }

  int require_int(const char* what) {
    const std::string tok = require(what);
    int value = 0;
    auto [ptr, ec] =
        std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw ParseError(line, std::string("invalid integer for ") + what +
                                 ": '" + tok + "'");
    }
    return value;
  }

  double require_real(const char* what) {
    const std::string tok = require(what);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || tok.empty()) {
      throw ParseError(line, std::string("invalid number for ") + what +
                                 ": '" + tok + "'");
    }
    if (std::isnan(value)) {
      throw ParseError(line, "NaN cost rejected");
    }
    if (std::isinf(value)) {
      throw ParseError(line,
                       "infinite cost rejected; omit forbidden assignments");
    }
    return value;
  }

  void expect_end() {
    std::string tok;
    if (next(tok)) {
      throw ParseError(line, "unexpected trailing token '" + tok + "'");
    }
  }
};

}  // namespace

Problem parse_dd(std::istream& in) {
  bool have_prologue = false;
  int num_nodes = 0, num_labels = 0, declared_a = 0, declared_e = 0;
  std::vector<Assignment> assignments;
  std::vector<char> seen_id;
  std::vector<Edge> edges;
  Geometry geometry;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    Tokenizer tok(raw, line_no);
    std::string tag;
    if (!tok.next(tag)) continue;  // blank line

    if (tag == "c") {
      continue;
    } else if (tag == "p") {
      if (have_prologue) {
        throw ParseError(line_no, "duplicate prologue");
      }
      num_nodes = tok.require_int("#V");
      num_labels = tok.require_int("#L");
      declared_a = tok.require_int("#A");
      declared_e = tok.require_int("#E");
      tok.expect_end();
      if (num_nodes < 0 || num_labels < 0 || declared_a < 0 ||
          declared_e < 0) {
        throw ParseError(line_no, "negative count in prologue");
      }
      have_prologue = true;
      assignments.resize(declared_a);
      seen_id.assign(declared_a, 0);
    } else if (tag == "a") {
      if (!have_prologue) {
        throw ParseError(line_no, "'a' line before prologue");
      }
      const int id = tok.require_int("assignment id");
      const int node = tok.require_int("node");
      const int label = tok.require_int("label");
      const double cost = tok.require_real("cost");
      tok.expect_end();
      if (id < 0 || id >= declared_a) {
        throw ParseError(line_no, "assignment id " + std::to_string(id) +
                                      " outside declared range");
      }
      if (seen_id[id]) {
        throw ParseError(line_no,
                         "duplicate assignment id " + std::to_string(id));
      }
      if (node < 0 || node >= num_nodes) {
        throw ParseError(line_no, "node index out of range");
      }
      if (label < 0 || label >= num_labels) {
        throw ParseError(line_no, "label index out of range");
      }
      seen_id[id] = 1;
      assignments[id] = Assignment{node, label, cost};
    } else if (tag == "e") {
      if (!have_prologue) {
        throw ParseError(line_no, "'e' line before prologue");
      }
      const int a = tok.require_int("assignment id");
      const int b = tok.require_int("assignment id");
      const double cost = tok.require_real("cost");
      tok.expect_end();
      if (a < 0 || a >= declared_a || b < 0 || b >= declared_a) {
        throw ParseError(line_no, "edge references undeclared assignment id");
      }
      edges.push_back(Edge{a, b, cost});
    } else if (tag == "i0" || tag == "i1") {
      if (!have_prologue) {
        throw ParseError(line_no, "'" + tag + "' line before prologue");
      }
      const int idx = tok.require_int("index");
      const double x = tok.require_real("x");
      const double y = tok.require_real("y");
      tok.expect_end();
      const int limit = tag == "i0" ? num_nodes : num_labels;
      if (idx < 0 || idx >= limit) {
        throw ParseError(line_no, "coordinate index out of range");
      }
      auto& coords =
          tag == "i0" ? geometry.left_coords : geometry.right_coords;
      coords.emplace_back(idx, Point2{x, y});
    } else if (tag == "n0" || tag == "n1") {
      if (!have_prologue) {
        throw ParseError(line_no, "'" + tag + "' line before prologue");
      }
      const int a = tok.require_int("index");
      const int b = tok.require_int("index");
      tok.expect_end();
      const int limit = tag == "n0" ? num_nodes : num_labels;
      if (a < 0 || a >= limit || b < 0 || b >= limit) {
        throw ParseError(line_no, "neighbor index out of range");
      }
      auto& pairs =
          tag == "n0" ? geometry.left_neighbors : geometry.right_neighbors;
      pairs.emplace_back(a, b);
    } else {
      throw ParseError(line_no, "unknown line tag '" + tag + "'");
    }
  }

  if (!have_prologue) {
    throw ParseError("missing prologue");
  }
  const int seen = static_cast<int>(
      std::count(seen_id.begin(), seen_id.end(), char(1)));
  if (seen != declared_a) {
    throw ParseError("prologue declares " + std::to_string(declared_a) +
                     " assignments but " + std::to_string(seen) +
                     " were defined");
  }
  if (static_cast<int>(edges.size()) != declared_e) {
    throw ParseError("prologue declares " + std::to_string(declared_e) +
                     " edges but " + std::to_string(edges.size()) +
                     " were defined");
  }

  try {
    return Problem(num_nodes, num_labels, std::move(assignments),
                   std::move(edges), std::move(geometry));
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Problem parse_dd(const std::string& text) {
  std::istringstream in(text);
  return parse_dd(in);
}

Problem load_dd(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open file: " + path);
  }
  return parse_dd(in);
}

namespace {

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

std::string write_dd(const Problem& problem) {
  std::ostringstream out;
  out << "p " << problem.num_nodes() << ' ' << problem.num_labels() << ' '
      << problem.num_assignments() << ' ' << problem.num_edges() << '\n';
  for (int id = 0; id < problem.num_assignments(); ++id) {
    const Assignment& a = problem.assignment(id);
    out << "a " << id << ' ' << a.node << ' ' << a.label << ' '
        << format_real(a.cost) << '\n';
  }
  std::vector<Edge> edges = problem.edges();
  for (Edge& e : edges) {
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (const Edge& e : edges) {
    out << "e " << e.a << ' ' << e.b << ' ' << format_real(e.cost) << '\n';
  }
  const Geometry& g = problem.geometry();
  for (const auto& [i, p] : g.left_coords) {
    out << "i0 " << i << ' ' << format_real(p.x) << ' ' << format_real(p.y)
        << '\n';
  }
  for (const auto& [i, p] : g.right_coords) {
    out << "i1 " << i << ' ' << format_real(p.x) << ' ' << format_real(p.y)
        << '\n';
  }
  for (const auto& [a, b] : g.left_neighbors) {
    out << "n0 " << a << ' ' << b << '\n';
  }
  for (const auto& [a, b] : g.right_neighbors) {
    out << "n1 " << a << ' ' << b << '\n';
  }
  return out.str();
}

void save_dd(const Problem& problem, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw Error("cannot open file for writing: " + path);
  }
  out << write_dd(problem);
}

}  // namespace gmtk
