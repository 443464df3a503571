#include "ihdg/export.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>

namespace ihdg {

void export_field(const Discretization& disc, const State& state, ExportSpace space, int field,
                  std::ostream& out) {
  const auto& l = disc.layout;
  const bool enriched = space == ExportSpace::Enriched;
  const auto& nodes = enriched ? disc.ref.enriched.nodes() : disc.ref.scalar.nodes();
  out << "x,y,value\n";
  char line[96];
  for (int e = 0; e < static_cast<int>(disc.mesh.num_elements()); ++e) {
    const AffineMap map(disc.mesh.element_vertices(e));
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
      double v = 0.0;
      switch (space) {
        case ExportSpace::Scalar: v = state.beta[field * l.n_scalar() + l.scalar(e, i)]; break;
        case ExportSpace::Enriched: v = state.gamma[field * l.n_enriched() + l.enriched(e, i)]; break;
        case ExportSpace::FluxX: v = state.alpha[field * l.n_flux() + l.flux(e, 0, i)]; break;
        case ExportSpace::FluxY: v = state.alpha[field * l.n_flux() + l.flux(e, 1, i)]; break;
      }
      const Point x = map.to_physical(nodes[i]);
      std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g\n", x.x(), x.y(), v);
      out << line;
    }
  }
}

void export_field(const Discretization& disc, const State& state, ExportSpace space, int field,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::ios_base::failure("cannot write '" + path + "': " + std::strerror(errno));
  }
  export_field(disc, state, space, field, out);
  out.flush();
  if (!out) {
    throw std::ios_base::failure("error writing '" + path + "': " + std::strerror(errno));
  }
}

}  // namespace ihdg
