#include "ntst/io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "ntst/errors.hpp"

namespace ntst {

namespace {

bool allDigits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit((unsigned char)c)) return false;
  return true;
}

Weight parseWeightToken(const std::string& tok, int lineNo) {
  auto bad = [&]() -> ParseError { return ParseError(lineNo, "invalid edge weight '" + tok + "'"); };
  std::string body = tok;
  if (!body.empty() && (body[0] == '+' || body[0] == '-')) body = body.substr(1);
  Weight w;
  if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash), den = body.substr(slash + 1);
    if (!allDigits(num) || !allDigits(den)) throw bad();
    mpz_class d(den);
    if (d == 0) throw bad();
    w = Weight(mpz_class(num), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string whole = body.substr(0, dot), frac = body.substr(dot + 1);
    if (whole.empty() && frac.empty()) throw bad();
    if ((!whole.empty() && !allDigits(whole)) || (!frac.empty() && !allDigits(frac))) throw bad();
    mpz_class num(whole.empty() ? std::string("0") : whole);
    for (char c : frac) num = num * 10 + (c - '0');
    mpz_class den(1);
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    w = Weight(num, den);
  } else {
    if (!allDigits(body)) throw bad();
    w = Weight(mpz_class(body));
  }
  if (tok[0] == '-' && w != 0) throw ParseError(lineNo, "edge weights must be positive");
  w.canonicalize();
  if (w <= 0) throw ParseError(lineNo, "edge weights must be positive");
  return w;
}

void ensureLineDone(std::istringstream& ss, int lineNo) {
  std::string extra;
  if (ss >> extra) throw ParseError(lineNo, "unexpected trailing token '" + extra + "'");
}

}  // namespace

Instance parseInstance(std::istream& in) {
  std::string line;
  int lineNo = 0;
  std::optional<MultiGraph> g;
  long declaredEdges = 0;
  std::vector<Weight> weights;
  bool anyWeight = false;
  std::vector<char> ntMask;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ss(line);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "c") continue;
    if (tag == "p") {
      if (g) throw ParseError(lineNo, "duplicate problem line");
      std::string kind;
      long n = 0, m = 0;
      if (!(ss >> kind >> n >> m) || kind != "ntst")
        throw ParseError(lineNo, "expected 'p ntst <n> <m>'");
      if (n < 1 || m < 0) throw ParseError(lineNo, "invalid sizes in problem line");
      ensureLineDone(ss, lineNo);
      g.emplace((int)n);
      ntMask.assign((size_t)n, 0);
      declaredEdges = m;
      continue;
    }
    if (!g) throw ParseError(lineNo, "directive before the problem line");
    if (tag == "e") {
      long u = 0, v = 0;
      if (!(ss >> u >> v)) throw ParseError(lineNo, "expected 'e <u> <v> [w]'");
      Weight w(1);
      std::string wtok;
      if (ss >> wtok) {
        w = parseWeightToken(wtok, lineNo);
        anyWeight = true;
        ensureLineDone(ss, lineNo);
      }
      if (u < 1 || u > g->numVertices() || v < 1 || v > g->numVertices())
        throw ParseError(lineNo, "edge endpoint out of range");
      if (u == v) throw ParseError(lineNo, "self-loops are not allowed");
      g->addEdge((int)u - 1, (int)v - 1);
      weights.push_back(std::move(w));
      continue;
    }
    if (tag == "nt") {
      long v = 0;
      if (!(ss >> v)) throw ParseError(lineNo, "expected 'nt <v>'");
      ensureLineDone(ss, lineNo);
      if (v < 1 || v > g->numVertices()) throw ParseError(lineNo, "vertex out of range");
      ntMask[(size_t)v - 1] = 1;
      continue;
    }
    throw ParseError(lineNo, "unknown directive '" + tag + "'");
  }
  if (!g) throw ParseError(std::max(lineNo, 1), "missing problem line");
  if (g->numEdges() != declaredEdges)
    throw ParseError(std::max(lineNo, 1), "edge count does not match the problem line");
  return Instance(std::move(*g), std::move(ntMask),
                  anyWeight ? std::optional<std::vector<Weight>>(std::move(weights)) : std::nullopt);
}

Instance parseInstanceFile(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open file: " + path);
  return parseInstance(f);
}

std::string renderInstance(const Instance& inst) {
  std::ostringstream out;
  out << "p ntst " << inst.numVertices() << ' ' << inst.numEdges() << '\n';
  for (int v : inst.ntList()) out << "nt " << v + 1 << '\n';
  for (int e = 0; e < inst.numEdges(); ++e) {
    const MultiGraph::Edge& ed = inst.graph.edge(e);
    out << "e " << ed.a + 1 << ' ' << ed.b + 1;
    if (inst.weights) out << ' ' << (*inst.weights)[(size_t)e].get_str();
    out << '\n';
  }
  return out.str();
}

void writeInstanceFile(const std::string& path, const Instance& inst) {
  std::ofstream f(path);
  if (!f) throw InputError("cannot write file: " + path);
  f << renderInstance(inst);
  f.flush();
  if (!f) throw InputError("failed while writing file: " + path);
}

EdgeSet parseEdgeList(std::istream& in, int numEdges) {
  EdgeSet ids;
  std::vector<char> seen((size_t)numEdges, 0);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "c") continue;
    ss.clear();
    ss.seekg(0);
    long id = 0;
    while (ss >> id) {
      if (id < 1 || id > numEdges) throw ParseError(lineNo, "edge id out of range");
      if (seen[(size_t)id - 1]) throw ParseError(lineNo, "duplicate edge id");
      seen[(size_t)id - 1] = 1;
      ids.push_back((int)id - 1);
    }
    if (!ss.eof()) throw ParseError(lineNo, "invalid edge id");
  }
  return normalizedEdgeSet(std::move(ids));
}

EdgeSet parseEdgeListFile(const std::string& path, int numEdges) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot open file: " + path);
  return parseEdgeList(f, numEdges);
}

std::string renderEdgeList(const EdgeSet& edges) {
  std::ostringstream out;
  for (size_t i = 0; i < edges.size(); ++i) out << (i ? " " : "") << edges[i] + 1;
  out << '\n';
  return out.str();
}

}  // namespace ntst
