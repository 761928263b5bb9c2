#include "frcert/native_io.hpp"

#include <sstream>

namespace frcert {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr const char* kMagic = "frcert-native";

// ---- writer ----

class Writer {
 public:
  void line(const std::string& s) { out_ << s << "\n"; }

  void matrix(const std::string& role, const RatMatrix& x) {
    out_ << "matrix " << role << " " << x.rows() << " " << x.cols() << "\n";
    for (Index r = 0; r < x.rows(); ++r) {
      for (Index c = 0; c < x.cols(); ++c) out_ << (c ? " " : "") << x(r, c).str();
      out_ << "\n";
    }
  }

  void vector(const std::string& role, const RatVector& v) {
    out_ << "vector " << role << " " << v.size() << "\n";
    for (Index i = 0; i < v.size(); ++i) out_ << (i ? " " : "") << v(i).str();
    out_ << "\n";
  }

  void sizes(const BlockSizes& s) {
    out_ << "sizes";
    for (Index p : s) out_ << " " << p;
    out_ << "\n";
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string cone_line(const ConeSpec& k) {
  std::string s = "cone";
  for (const auto& b : k.blocks) s += " " + to_string(b.kind) + " " + std::to_string(b.dim);
  return s;
}

std::string one_line(const std::string& s) {
  std::string out = s;
  for (char& ch : out)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return out;
}

void write_reformulation(Writer& w, const PrimalReformulation& r) {
  w.matrix("M", r.M);
  w.vector("mu", r.mu);
  w.matrix("t", r.t);
}

// ---- reader ----

struct Token {
  std::string text;
  std::size_t column;
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

class Reader {
 public:
  explicit Reader(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::size_t number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      Line l{number, {}};
      std::size_t i = 0;
      while (i < raw.size()) {
        while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t')) ++i;
        if (i >= raw.size()) break;
        if (raw[i] == '#') break;
        std::size_t start = i;
        while (i < raw.size() && raw[i] != ' ' && raw[i] != '\t') ++i;
        l.tokens.push_back({raw.substr(start, i - start), start + 1});
      }
      if (!l.tokens.empty()) {
        raws_.push_back(raw);
        lines_.push_back(std::move(l));
      }
    }
    last_line_ = number;
  }

  bool done() const { return pos_ >= lines_.size(); }

  const Line& peek() const {
    if (done()) throw ParseError(last_line_ + 1, 1, "unexpected end of document");
    return lines_[pos_];
  }

  const Line& next() {
    const Line& l = peek();
    ++pos_;
    return l;
  }

  /// Raw text of the current line after the first `skip` tokens.
  std::string rest_of(const Line& l, std::size_t skip) const {
    const std::string& raw = raws_[static_cast<std::size_t>(&l - lines_.data())];
    if (l.tokens.size() <= skip) return {};
    return raw.substr(l.tokens[skip].column - 1);
  }

  [[noreturn]] static void fail(const Line& l, std::size_t tok, const std::string& msg) {
    std::size_t col = tok < l.tokens.size() ? l.tokens[tok].column : (l.tokens.empty() ? 1 : l.tokens.back().column);
    throw ParseError(l.number, col, msg);
  }

  const Line& expect(const std::string& keyword, std::size_t arity) {
    const Line& l = next();
    if (l.tokens[0].text != keyword) fail(l, 0, "expected '" + keyword + "', found '" + l.tokens[0].text + "'");
    if (arity != static_cast<std::size_t>(-1) && l.tokens.size() != arity + 1)
      fail(l, l.tokens.size() > arity + 1 ? arity + 1 : 0,
           "'" + keyword + "' takes " + std::to_string(arity) + " argument(s)");
    return l;
  }

  static Index integer(const Line& l, std::size_t tok) {
    const std::string& s = l.tokens[tok].text;
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return static_cast<Index>(v);
    } catch (const std::exception&) {
      fail(l, tok, "expected an integer, found '" + s + "'");
    }
  }

  static Index count(const Line& l, std::size_t tok) {
    Index v = integer(l, tok);
    if (v < 0) fail(l, tok, "expected a nonnegative count");
    return v;
  }

  static Rat rational(const Line& l, std::size_t tok) {
    const std::string& s = l.tokens[tok].text;
    if (s.find_first_of(".eE") != std::string::npos) fail(l, tok, "rationals are written as p or p/q, found '" + s + "'");
    try {
      return parse_rat(s);
    } catch (const std::invalid_argument& e) {
      fail(l, tok, e.what());
    }
  }

  RatMatrix matrix(const std::string& role) {
    const Line& h = expect("matrix", 3);
    if (h.tokens[1].text != role) fail(h, 1, "expected matrix '" + role + "', found '" + h.tokens[1].text + "'");
    Index rows = count(h, 2), cols = count(h, 3);
    RatMatrix x(rows, cols);
    if (cols == 0) return x;  // empty rows are not written as lines
    for (Index r = 0; r < rows; ++r) {
      const Line& l = next();
      if (static_cast<Index>(l.tokens.size()) != cols)
        fail(l, 0, "matrix row needs " + std::to_string(cols) + " entries, found " + std::to_string(l.tokens.size()));
      for (Index c = 0; c < cols; ++c) x(r, c) = rational(l, static_cast<std::size_t>(c));
    }
    return x;
  }

  RatVector vector(const std::string& role) {
    const Line& h = expect("vector", 2);
    if (h.tokens[1].text != role) fail(h, 1, "expected vector '" + role + "', found '" + h.tokens[1].text + "'");
    Index len = count(h, 2);
    RatVector v(len);
    if (len == 0) return v;  // the blank entry line is skipped like any blank line
    const Line& l = next();
    if (static_cast<Index>(l.tokens.size()) != len)
      fail(l, 0, "vector needs " + std::to_string(len) + " entries, found " + std::to_string(l.tokens.size()));
    for (Index i = 0; i < len; ++i) v(i) = rational(l, static_cast<std::size_t>(i));
    return v;
  }

  bool at(const std::string& keyword) const { return !done() && peek().tokens[0].text == keyword; }

  BlockSizes sizes() {
    const Line& l = expect("sizes", static_cast<std::size_t>(-1));
    BlockSizes s;
    for (std::size_t t = 1; t < l.tokens.size(); ++t) s.push_back(count(l, t));
    return s;
  }

  SequenceCheck check() {
    const Line& l = expect("check", 1);
    try {
      return sequence_check_from_string(l.tokens[1].text);
    } catch (const std::invalid_argument& e) {
      fail(l, 1, e.what());
    }
  }

 private:
  std::vector<Line> lines_;
  std::vector<std::string> raws_;
  std::size_t pos_ = 0;
  std::size_t last_line_ = 0;
};

ConeSpec parse_cone(const Line& l) {
  if (l.tokens.size() < 3 || l.tokens.size() % 2 == 0) Reader::fail(l, 0, "cone needs kind/dimension pairs");
  ConeSpec k;
  for (std::size_t t = 1; t + 1 < l.tokens.size(); t += 2) {
    ConeKind kind;
    try {
      kind = cone_kind_from_string(l.tokens[t].text);
    } catch (const std::invalid_argument& e) {
      Reader::fail(l, t, e.what());
    }
    Index dim = Reader::count(l, t + 1);
    if (dim < 1) Reader::fail(l, t + 1, "cone block dimension must be positive");
    k.blocks.push_back({kind, dim});
  }
  return k;
}

PrimalReformulation read_reformulation(Reader& r) {
  PrimalReformulation f;
  f.M = r.matrix("M");
  f.mu = r.vector("mu");
  f.t = r.matrix("t");
  return f;
}

std::vector<RatMatrix> read_members(Reader& r, const std::string& role) {
  const Line& l = r.expect("members", 1);
  Index count = Reader::count(l, 1);
  std::vector<RatMatrix> out;
  for (Index i = 0; i < count; ++i) out.push_back(r.matrix(role));
  return out;
}

template <typename F>
void guard(const Line& l, F&& f) {
  try {
    f();
  } catch (const DimensionError& e) {
    Reader::fail(l, 0, e.what());
  }
}

}  // namespace

std::string write_native(const NativeDocument& doc) {
  Writer w;
  w.line(std::string(kMagic) + " " + std::to_string(doc.version));
  if (doc.is_dual()) {
    const DualInstance& d = doc.dual();
    w.line("problem dual");
    w.line(cone_line(d.cone));
    w.line("constraints " + std::to_string(d.m()));
    for (const auto& a : d.a) w.matrix("a", a);
    w.vector("c", d.c);
    if (d.objective) w.matrix("objective", *d.objective);
  } else {
    const PrimalInstance& p = doc.primal();
    w.line("problem primal");
    w.line(cone_line(p.cone));
    w.line("variables " + std::to_string(p.m()));
    for (const auto& a : p.a) w.matrix("a", a);
    w.matrix("b", p.b);
    if (p.c) w.vector("c", *p.c);
  }
  const CertificateBundle& b = doc.bundle;
  if (!b.empty() || !b.label.empty() || !b.provenance.empty()) {
    w.line("certificate");
    if (!b.label.empty()) w.line("label " + one_line(b.label));
    for (const auto& [key, value] : b.provenance) w.line("provenance " + key + " " + one_line(value));
    if (b.infeasible) {
      w.line("infeasible");
      w.line("check " + to_string(b.infeasible->check));
      w.sizes(b.infeasible->sizes);
      w.matrix("M", b.infeasible->M);
      w.matrix("t", b.infeasible->t);
      w.line("end");
    }
    auto write_sequence = [&](const SequenceWitness& s) {
      w.line("check " + to_string(s.check));
      w.sizes(s.sizes);
      if (s.rotation) w.matrix("rotation", *s.rotation);
      w.line("members " + std::to_string(s.seq.size()));
      for (const auto& y : s.seq) w.matrix("y", y);
    };
    if (b.not_strongly) {
      w.line("not-strongly");
      write_sequence(*b.not_strongly);
      w.line("end");
    }
    if (b.primal_infeasible) {
      w.line("primal-infeasible");
      write_sequence(b.primal_infeasible->y);
      if (b.primal_infeasible->reformulation) {
        w.line("reformulation");
        write_reformulation(w, *b.primal_infeasible->reformulation);
      }
      w.line("end");
    }
    if (b.primal_not_strongly) {
      w.line("primal-not-strongly");
      w.line("check " + to_string(b.primal_not_strongly->check));
      w.line("ell " + std::to_string(b.primal_not_strongly->ell));
      w.sizes(b.primal_not_strongly->sizes);
      write_reformulation(w, b.primal_not_strongly->reformulation);
      w.line("end");
    }
    w.line("end");
  }
  return w.str();
}

NativeDocument read_native(const std::string& text) {
  Reader r(text);
  NativeDocument doc;
  {
    const Line& l = r.expect(kMagic, 1);
    doc.version = static_cast<int>(Reader::integer(l, 1));
    if (doc.version != kNativeFormatVersion) Reader::fail(l, 1, "unsupported format version " + l.tokens[1].text);
  }
  const Line& pl = r.expect("problem", 1);
  const std::string kind = pl.tokens[1].text;
  if (kind != "dual" && kind != "primal") Reader::fail(pl, 1, "problem must be 'dual' or 'primal'");
  const Line& cl = r.expect("cone", static_cast<std::size_t>(-1));
  ConeSpec cone = parse_cone(cl);

  if (kind == "dual") {
    DualInstance d;
    d.cone = cone;
    const Line& ml = r.expect("constraints", 1);
    Index m = Reader::count(ml, 1);
    for (Index i = 0; i < m; ++i) d.a.push_back(r.matrix("a"));
    d.c = r.vector("c");
    if (r.at("matrix")) d.objective = r.matrix("objective");
    guard(ml, [&] { d.validate(); });
    doc.instance = std::move(d);
  } else {
    PrimalInstance p;
    p.cone = cone;
    const Line& ml = r.expect("variables", 1);
    Index m = Reader::count(ml, 1);
    for (Index i = 0; i < m; ++i) p.a.push_back(r.matrix("a"));
    p.b = r.matrix("b");
    if (r.at("vector")) p.c = r.vector("c");
    guard(ml, [&] { p.validate(); });
    doc.instance = std::move(p);
  }

  if (r.done()) return doc;
  r.expect("certificate", 0);
  CertificateBundle& b = doc.bundle;
  auto read_sequence = [&](SequenceWitness& s) {
    s.check = r.check();
    s.sizes = r.sizes();
    if (r.at("matrix")) s.rotation = r.matrix("rotation");
    s.seq = read_members(r, "y");
  };
  while (true) {
    const Line& l = r.next();
    const std::string& kw = l.tokens[0].text;
    if (kw == "end") {
      if (l.tokens.size() != 1) Reader::fail(l, 1, "'end' takes no arguments");
      break;
    }
    if (kw == "label") {
      b.label = r.rest_of(l, 1);
    } else if (kw == "provenance") {
      if (l.tokens.size() < 2) Reader::fail(l, 0, "provenance needs a key");
      b.provenance[l.tokens[1].text] = r.rest_of(l, 2);
    } else if (kw == "infeasible") {
      InfeasibilityWitness w;
      w.check = r.check();
      w.sizes = r.sizes();
      w.M = r.matrix("M");
      w.t = r.matrix("t");
      r.expect("end", 0);
      b.infeasible = std::move(w);
    } else if (kw == "not-strongly") {
      SequenceWitness s;
      read_sequence(s);
      r.expect("end", 0);
      b.not_strongly = std::move(s);
    } else if (kw == "primal-infeasible") {
      PrimalInfeasibilityWitness w;
      read_sequence(w.y);
      if (r.at("reformulation")) {
        r.expect("reformulation", 0);
        w.reformulation = read_reformulation(r);
      }
      r.expect("end", 0);
      b.primal_infeasible = std::move(w);
    } else if (kw == "primal-not-strongly") {
      PrimalNotStronglyWitness w;
      w.check = r.check();
      w.ell = Reader::count(r.expect("ell", 1), 1);
      w.sizes = r.sizes();
      w.reformulation = read_reformulation(r);
      r.expect("end", 0);
      b.primal_not_strongly = std::move(w);
    } else {
      Reader::fail(l, 0, "unknown certificate section '" + kw + "'");
    }
  }
  if (!r.done()) Reader::fail(r.peek(), 0, "content after the final 'end'");
  return doc;
}

bool same(const NativeDocument& x, const NativeDocument& y) {
  if (x.version != y.version || x.is_dual() != y.is_dual()) return false;
  bool inst = x.is_dual() ? same(x.dual(), y.dual()) : same(x.primal(), y.primal());
  return inst && same(x.bundle, y.bundle);
}

}  // namespace frcert
