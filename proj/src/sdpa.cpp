#include "frcert/sdpa.hpp"

#include <sstream>

namespace frcert {
namespace {

bool all_terminating(const SdpaProblem& p) {
  for (Index i = 0; i < p.c.size(); ++i)
    if (terminating_decimal(p.c(i)).empty()) return false;
  for (const auto& e : p.entries)
    if (terminating_decimal(e.value).empty()) return false;
  return true;
}

std::string number(const Rat& v, bool exact) { return exact ? terminating_decimal(v) : approx_decimal(v); }

Index block_order(Index size) { return size < 0 ? -size : size; }

}  // namespace

std::string write_sdpa(const SdpaProblem& p) {
  std::ostringstream out;
  const bool exact = all_terminating(p);
  for (const auto& c : p.comments) out << "* " << c << "\n";
  if (!exact) out << "* lossy: some values were rounded to 17 significant digits\n";
  out << p.m << " = mDIM\n" << p.block_sizes.size() << " = nBLOCK\n";
  for (std::size_t b = 0; b < p.block_sizes.size(); ++b) out << (b ? " " : "") << p.block_sizes[b];
  out << " = bLOCKsTRUCT\n";
  for (Index i = 0; i < p.c.size(); ++i) out << (i ? " " : "") << number(p.c(i), exact);
  out << "\n";
  for (const auto& e : p.entries)
    if (e.value != 0) out << e.matrix << " " << e.block << " " << e.i << " " << e.j << " " << number(e.value, exact) << "\n";
  return out.str();
}

SdpaProblem read_sdpa(const std::string& text) {
  // Free-format token stream: comment lines dropped, separators ",{}()" and
  // trailing "= name" annotations ignored.
  struct Token {
    std::string text;
    std::size_t line;
  };
  std::vector<Token> toks;
  {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::size_t first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '"' || line[first] == '*') continue;
      for (char& ch : line)
        if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
      if (auto eq = line.find('='); eq != std::string::npos) line = line.substr(0, eq);
      std::istringstream ls(line);
      std::string t;
      while (ls >> t) toks.push_back({t, lineno});
    }
  }
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const Token& {
    if (pos >= toks.size()) throw SdpaFormatError(std::string("unexpected end of file reading ") + what);
    return toks[pos++];
  };
  auto at = [](const Token& t) { return " at line " + std::to_string(t.line); };
  auto to_index = [&](const Token& t, const char* what) {
    try {
      std::size_t used = 0;
      long v = std::stol(t.text, &used);
      if (used != t.text.size()) throw std::invalid_argument(t.text);
      return static_cast<Index>(v);
    } catch (const std::exception&) {
      throw SdpaFormatError(std::string("malformed ") + what + " '" + t.text + "'" + at(t));
    }
  };
  auto to_rat = [&](const Token& t) {
    try {
      return parse_rat(t.text);
    } catch (const std::invalid_argument& e) {
      throw SdpaFormatError(std::string(e.what()) + at(t));
    }
  };

  SdpaProblem p;
  p.m = to_index(next("mDIM"), "mDIM");
  const Token& nb = next("nBLOCK");
  Index nblocks = to_index(nb, "nBLOCK");
  if (p.m < 0) throw SdpaFormatError("negative mDIM");
  if (nblocks < 1) throw SdpaFormatError("nBLOCK must be positive" + at(nb));
  for (Index b = 0; b < nblocks; ++b) {
    const Token& t = next("bLOCKsTRUCT");
    Index s = to_index(t, "block size");
    if (s == 0) throw SdpaFormatError("block size 0" + at(t));
    p.block_sizes.push_back(s);
  }
  p.c = RatVector(p.m);
  for (Index i = 0; i < p.m; ++i) p.c(i) = to_rat(next("objective vector"));
  while (pos < toks.size()) {
    const Token& t0 = next("entry");
    SdpaEntry e{to_index(t0, "matrix number"), to_index(next("entry"), "block number"), to_index(next("entry"), "row"),
                to_index(next("entry"), "column"), to_rat(next("entry"))};
    if (e.matrix < 0 || e.matrix > p.m) throw SdpaFormatError("matrix number out of range" + at(t0));
    if (e.block < 1 || e.block > nblocks) throw SdpaFormatError("block number out of range" + at(t0));
    Index order = block_order(p.block_sizes[static_cast<std::size_t>(e.block - 1)]);
    if (e.i < 1 || e.j < 1 || e.i > order || e.j > order) throw SdpaFormatError("entry index out of range" + at(t0));
    if (p.block_sizes[static_cast<std::size_t>(e.block - 1)] < 0 && e.i != e.j)
      throw SdpaFormatError("off-diagonal entry in a diagonal block" + at(t0));
    if (e.i > e.j) std::swap(e.i, e.j);
    p.entries.push_back(std::move(e));
  }
  return p;
}

std::vector<RatMatrix> sdpa_matrix(const SdpaProblem& p, Index index) {
  std::vector<RatMatrix> blocks;
  for (Index s : p.block_sizes) blocks.push_back(zeros(block_order(s), block_order(s)));
  for (const auto& e : p.entries) {
    if (e.matrix != index) continue;
    RatMatrix& b = blocks[static_cast<std::size_t>(e.block - 1)];
    b(e.i - 1, e.j - 1) = e.value;
    b(e.j - 1, e.i - 1) = e.value;
  }
  return blocks;
}

SdpaProblem export_sdpa(const DualInstance& inst) {
  inst.validate();
  const bool psd = inst.cone.is_single_psd();
  const bool diag = inst.cone.blocks.size() == 1 && inst.cone.blocks[0].kind == ConeKind::Orthant;
  if (!psd && !diag) throw DimensionError("SDPA export supports a single PSD or orthant block, got " + describe(inst.cone));
  const Index n = inst.cone.blocks[0].dim;
  SdpaProblem p;
  p.m = inst.m();
  p.block_sizes = {psd ? n : -n};
  p.c = inst.c;
  auto emit = [&](Index index, const RatMatrix& x, const Rat& sign) {
    if (psd) {
      for (Index i = 0; i < n; ++i)
        for (Index j = i; j < n; ++j)
          if (x(i, j) != 0) p.entries.push_back({index, 1, i + 1, j + 1, sign * x(i, j)});
    } else {
      for (Index i = 0; i < n; ++i)
        if (x(i, 0) != 0) p.entries.push_back({index, 1, i + 1, i + 1, sign * x(i, 0)});
    }
  };
  RatMatrix objective = inst.objective ? *inst.objective : (psd ? identity(n) : RatMatrix::Constant(n, 1, Rat(1)));
  emit(0, objective, Rat(-1));
  for (Index i = 0; i < p.m; ++i) emit(i + 1, inst.a[static_cast<std::size_t>(i)], Rat(1));
  return p;
}

DualInstance import_sdpa(const SdpaProblem& p) {
  if (p.block_sizes.size() != 1) throw SdpaFormatError("import supports exactly one block");
  const Index s = p.block_sizes[0];
  const Index n = block_order(s);
  DualInstance inst;
  inst.cone = s > 0 ? ConeSpec::psd(n) : ConeSpec::orthant(n);
  inst.c = p.c;
  auto dense = [&](Index index) {
    RatMatrix b = sdpa_matrix(p, index)[0];
    if (s > 0) return b;
    return RatMatrix(b.diagonal());
  };
  for (Index i = 1; i <= p.m; ++i) inst.a.push_back(dense(i));
  RatMatrix obj = -dense(0);
  RatMatrix default_obj = s > 0 ? identity(n) : RatMatrix::Constant(n, 1, Rat(1));
  if (!same(obj, default_obj)) inst.objective = obj;
  if (inst.a.empty()) throw SdpaFormatError("no constraint matrices");
  return inst;
}

DualInstance import_sdpa(const std::string& text) { return import_sdpa(read_sdpa(text)); }

}  // namespace frcert
