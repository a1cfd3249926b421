#include "nilex/complexity.hpp"

#include <algorithm>
#include <sstream>

#include "nilex/exchange_io.hpp"

namespace nilex {

Refinement::Refinement(const PieceExchange& e) : e_(&e) {
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    maps_.push_back(e.piece_map(i));
    const auto& p = e.pieces[i];
    QPhi a = area(p.region);
    if (a.is_zero()) continue;
    nodes_.push_back(Node{Word{static_cast<std::uint8_t>(p.label)}, p.region, ShearMap{}, std::move(a)});
  }
  std::sort(nodes_.begin(), nodes_.end(), [](const Node& a, const Node& b) { return a.word < b.word; });
}

void Refinement::deepen() {
  std::vector<Node> next;
  for (const auto& node : nodes_) {
    const std::size_t last = e_->index_of(node.word[node.word.size() - 1]);
    const Region moved = maps_[last].apply(node.image);
    const ShearMap to_image = node.to_image.then(maps_[last]);
    for (const auto& piece : e_->pieces) {
      Region g = intersect(moved, piece.region);
      if (g.empty()) continue;
      QPhi a = area(g);
      if (sign(a) <= 0) continue;
      Word w = node.word;
      w.push_back(static_cast<std::uint8_t>(piece.label));
      next.push_back(Node{std::move(w), std::move(g), to_image, std::move(a)});
    }
  }
  std::sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.word < b.word; });
  nodes_ = std::move(next);
  ++depth_;
}

std::vector<Cell> Refinement::cells() const {
  std::vector<Cell> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) out.push_back(Cell{n.word, n.to_image.inverse().apply(n.image), n.area});
  return out;
}

QPhi Refinement::max_area() const {
  QPhi best;
  for (const auto& n : nodes_) {
    if (n.area > best) best = n.area;
  }
  return best;
}

QPhi Refinement::total_area() const {
  QPhi t;
  for (const auto& n : nodes_) t += n.area;
  return t;
}

std::vector<Cell> refine(const PieceExchange& e, std::size_t n) {
  if (n < 1) throw std::invalid_argument("refinement depth must be >= 1");
  Refinement r(e);
  r.deepen_to(n);
  return r.cells();
}

std::vector<ComplexityRow> complexity_table(const PieceExchange& e, std::size_t max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  std::vector<ComplexityRow> rows;
  Refinement r(e);
  for (std::size_t n = 1; n <= max_n; ++n) {
    r.deepen_to(n);
    rows.push_back({n, r.nodes().size(), r.max_area()});
  }
  return rows;
}

Language language_from_refinement(const PieceExchange& e, std::size_t max_n) {
  if (max_n < 1) throw std::invalid_argument("max_n must be >= 1");
  int alphabet = 0;
  for (const auto& p : e.pieces) alphabet = std::max(alphabet, p.label);
  Refinement r(e);
  r.deepen_to(max_n);
  Language L(alphabet, max_n);
  for (const auto& n : r.nodes()) L.insert_factors(n.word);
  return L;
}

QPhi max_cell_area(const PieceExchange& e, std::size_t n) {
  if (n < 1) throw std::invalid_argument("depth must be >= 1");
  Refinement r(e);
  r.deepen_to(n);
  return r.max_area();
}

std::size_t sturmian_prefix(const std::vector<ComplexityRow>& rows) {
  std::size_t m = 0;
  for (const auto& row : rows) {
    if (row.p != row.n + 1) break;
    m = row.n;
  }
  return m;
}

std::string complexity_csv(int level, const std::vector<ComplexityRow>& rows) {
  std::ostringstream os;
  os << "level,n,p_n\n";
  for (const auto& r : rows) os << level << ',' << r.n << ',' << r.p << '\n';
  return os.str();
}

std::string cells_text(const std::vector<Cell>& cells) {
  std::ostringstream os;
  os << "cells " << cells.size() << '\n';
  for (const auto& c : cells) {
    os << "cell " << c.word.str() << " area " << format_qphi(c.cell_area) << '\n';
    write_region(os, c.region);
  }
  return os.str();
}

}  // namespace nilex
