#include "nilex/exchange_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace nilex {

std::string format_qphi(const QPhi& x) {
  const auto p = to_strings(x);
  return p[0] + ' ' + p[1] + ' ' + p[2] + ' ' + p[3];
}

namespace {

void write_bound(std::ostream& os, const char* tag, const Bound& b) {
  os << ' ' << tag << ' ' << (b.strict ? 1 : 0) << ' ' << format_qphi(b.f.c2) << ' ' << format_qphi(b.f.c1) << ' '
     << format_qphi(b.f.c0);
}

class Reader {
 public:
  explicit Reader(std::istream& is) : is_(is) {}

  // Next non-empty, non-comment line split into tokens.
  bool next() {
    std::string line;
    while (std::getline(is_, line)) {
      ++lineno_;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      tokens_.clear();
      pos_ = 0;
      for (std::string t; ls >> t;) tokens_.push_back(t);
      if (!tokens_.empty()) return true;
    }
    return false;
  }

  void need_line(const char* what) {
    if (!next()) fail(std::string("unexpected end of input, expected ") + what);
  }

  std::string word() {
    if (pos_ >= tokens_.size()) fail("missing field");
    return tokens_[pos_++];
  }

  void expect(const std::string& w) {
    const std::string got = word();
    if (got != w) fail("expected '" + w + "', got '" + got + "'");
  }

  long integer() {
    const std::string t = word();
    try {
      std::size_t used = 0;
      const long v = std::stol(t, &used);
      if (used != t.size()) throw std::invalid_argument(t);
      return v;
    } catch (const std::exception&) {
      fail("bad integer '" + t + "'");
    }
  }

  bool flag() {
    const long v = integer();
    if (v != 0 && v != 1) fail("flag must be 0 or 1");
    return v == 1;
  }

  QPhi qphi() {
    std::array<std::string, 4> p;
    for (auto& s : p) s = word();
    try {
      return from_strings(p);
    } catch (const std::exception& ex) {
      fail(ex.what());
    }
  }

  Bound bound(const char* tag) {
    expect(tag);
    Bound b;
    b.strict = flag();
    b.f.c2 = qphi();
    b.f.c1 = qphi();
    b.f.c0 = qphi();
    return b;
  }

  void done() {
    if (pos_ != tokens_.size()) fail("trailing fields");
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::runtime_error("exchange text, line " + std::to_string(lineno_) + ": " + msg);
  }

 private:
  std::istream& is_;
  std::vector<std::string> tokens_;
  std::size_t pos_ = 0;
  long lineno_ = 0;
};

}  // namespace

void write_region(std::ostream& os, const Region& r) {
  os << "strips " << r.strips.size() << '\n';
  for (const auto& s : r.strips) {
    os << "strip " << (s.x.lo_closed ? 1 : 0) << ' ' << format_qphi(s.x.lo) << ' ' << format_qphi(s.x.hi) << ' '
       << (s.x.hi_closed ? 1 : 0);
    write_bound(os, "L", s.lower);
    write_bound(os, "U", s.upper);
    os << '\n';
  }
}

void write_exchange(std::ostream& os, const PieceExchange& e) {
  os << "nilex-exchange 1\n";
  if (e.base == BaseMap::TPhi) {
    os << "base t_phi\n";
  } else {
    os << "base translation " << format_qphi(e.alpha) << ' ' << format_qphi(e.beta) << '\n';
  }
  os << "level " << e.level << '\n';
  os << "pieces " << e.pieces.size() << '\n';
  for (const auto& p : e.pieces) {
    os << "piece " << p.label << " shift " << p.n << ' ' << p.m << '\n';
    write_region(os, p.region);
  }
  os << "end\n";
}

std::string exchange_to_text(const PieceExchange& e) {
  std::ostringstream os;
  write_exchange(os, e);
  return os.str();
}

PieceExchange read_exchange(std::istream& is) {
  Reader rd(is);
  PieceExchange e;
  rd.need_line("header");
  rd.expect("nilex-exchange");
  if (rd.integer() != 1) rd.fail("unsupported format version");
  rd.done();

  rd.need_line("base");
  rd.expect("base");
  const std::string kind = rd.word();
  if (kind == "t_phi") {
    e.base = BaseMap::TPhi;
  } else if (kind == "translation") {
    e.base = BaseMap::Translation;
    e.alpha = rd.qphi();
    e.beta = rd.qphi();
  } else {
    rd.fail("unknown base map '" + kind + "'");
  }
  rd.done();

  rd.need_line("level");
  rd.expect("level");
  e.level = static_cast<int>(rd.integer());
  if (e.level < 1) rd.fail("level must be >= 1");
  rd.done();

  rd.need_line("pieces");
  rd.expect("pieces");
  const long np = rd.integer();
  if (np < 1 || np > kMaxAlphabet) rd.fail("bad piece count");
  rd.done();

  for (long i = 0; i < np; ++i) {
    Piece p;
    rd.need_line("piece");
    rd.expect("piece");
    p.label = static_cast<int>(rd.integer());
    if (p.label < 1 || p.label > kMaxAlphabet) rd.fail("label out of range");
    rd.expect("shift");
    p.n = rd.integer();
    p.m = rd.integer();
    rd.done();
    rd.need_line("strips");
    rd.expect("strips");
    const long ns = rd.integer();
    if (ns < 0) rd.fail("bad strip count");
    rd.done();
    for (long j = 0; j < ns; ++j) {
      Strip s;
      rd.need_line("strip");
      rd.expect("strip");
      s.x.lo_closed = rd.flag();
      s.x.lo = rd.qphi();
      s.x.hi = rd.qphi();
      s.x.hi_closed = rd.flag();
      s.lower = rd.bound("L");
      s.upper = rd.bound("U");
      rd.done();
      if (!(s.x.lo < s.x.hi)) rd.fail("empty strip interval");
      p.region.strips.push_back(std::move(s));
    }
    e.pieces.push_back(std::move(p));
  }
  rd.need_line("end");
  rd.expect("end");
  rd.done();
  return e;
}

PieceExchange exchange_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_exchange(is);
}

std::string render_svg(const PieceExchange& e, const SvgOptions& opt) {
  static const char* kFill[] = {"#4f81bd", "#c0504d", "#9bbb59", "#8064a2", "#f79646", "#4bacc6"};
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  struct Poly {
    std::size_t piece;
    std::vector<std::pair<double, double>> pts;
  };
  std::vector<Poly> polys;
  const int k = std::max(2, opt.samples);
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    for (const auto& s : e.pieces[i].region.strips) {
      Poly poly{i, {}};
      const double lo = to_double(s.x.lo), hi = to_double(s.x.hi);
      auto eval = [](const QuadBound& f, double x) {
        return (to_double(f.c2) * x + to_double(f.c1)) * x + to_double(f.c0);
      };
      for (int t = 0; t <= k; ++t) {
        const double x = lo + (hi - lo) * t / k;
        poly.pts.emplace_back(x, eval(s.lower.f, x));
      }
      for (int t = k; t >= 0; --t) {
        const double x = lo + (hi - lo) * t / k;
        poly.pts.emplace_back(x, eval(s.upper.f, x));
      }
      for (const auto& [x, y] : poly.pts) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
      polys.push_back(std::move(poly));
    }
  }
  if (polys.empty()) throw std::invalid_argument("nothing to render");
  const double pad = 0.05 * std::max(x1 - x0, y1 - y0);
  x0 -= pad;
  x1 += pad;
  y0 -= pad;
  y1 += pad;
  const double scale = opt.width / (x1 - x0);
  const int height = static_cast<int>(std::ceil((y1 - y0) * scale));

  std::string out;
  char buf[128];
  std::snprintf(buf, sizeof buf,
                "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
                "width=\"%d\" height=\"%d\">\n",
                opt.width, height);
  out += buf;
  std::snprintf(buf, sizeof buf, "<title>level %d, %zu pieces</title>\n", e.level, e.pieces.size());
  out += buf;
  for (const auto& poly : polys) {
    std::snprintf(buf, sizeof buf, "<polygon fill=\"%s\" fill-opacity=\"0.8\" stroke=\"none\" points=\"",
                  kFill[poly.piece % 6]);
    out += buf;
    for (const auto& [x, y] : poly.pts) {
      std::snprintf(buf, sizeof buf, "%.3f,%.3f ", (x - x0) * scale, (y1 - y) * scale);
      out += buf;
    }
    out += "\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace nilex
