#pragma once

// Factor complexity of an exchange's coding by exact partition refinement.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "nilex/exchange.hpp"
#include "nilex/words.hpp"

namespace nilex {

struct Cell {
  Word word;
  Region region;
  QPhi cell_area;
};

/// Incremental refinement. A node at depth d stores the image R^{d-1}(C_w)
/// of its cell C_w, which lies in the piece of the last letter, together
/// with the composed map taking C_w onto it. Deepening intersects the next
/// image with every piece; shears preserve area, so cell areas come for free.
class Refinement {
 public:
  struct Node {
    Word word;
    Region image;
    ShearMap to_image;  // C_w -> image
    QPhi area;
  };

  explicit Refinement(const PieceExchange& e);

  std::size_t depth() const { return depth_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  /// Moves to depth + 1; zero-area children are dropped.
  void deepen();
  void deepen_to(std::size_t n) {
    while (depth_ < n) deepen();
  }

  /// Cells at the current depth, regions pulled back to the domain.
  std::vector<Cell> cells() const;
  QPhi max_area() const;
  QPhi total_area() const;

 private:
  const PieceExchange* e_;
  std::vector<ShearMap> maps_;
  std::size_t depth_ = 1;
  std::vector<Node> nodes_;  // sorted by word
};

std::vector<Cell> refine(const PieceExchange& e, std::size_t n);

struct ComplexityRow {
  std::size_t n;
  std::size_t p;
  QPhi max_area;
};
/// p(n) for n = 1..max_n.
std::vector<ComplexityRow> complexity_table(const PieceExchange& e, std::size_t max_n);

/// Factorial language of the cell words up to max_n.
Language language_from_refinement(const PieceExchange& e, std::size_t max_n);

QPhi max_cell_area(const PieceExchange& e, std::size_t n);

/// Largest M <= rows.size() with p(k) = k + 1 for every k <= M.
std::size_t sturmian_prefix(const std::vector<ComplexityRow>& rows);

/// CSV with header "level,n,p_n".
std::string complexity_csv(int level, const std::vector<ComplexityRow>& rows);

/// Cell listing in the exchange text format.
std::string cells_text(const std::vector<Cell>& cells);

}  // namespace nilex
