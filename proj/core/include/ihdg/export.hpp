// Point-cloud export of discrete fields as "x,y,value" CSV.

#ifndef IHDG_EXPORT_HPP
#define IHDG_EXPORT_HPP

#include <iosfwd>
#include <string>

#include "ihdg/discretization.hpp"
#include "ihdg/solver.hpp"

namespace ihdg {

enum class ExportSpace {
  Scalar,    ///< u_h at the P^k lattice nodes
  Enriched,  ///< u_h* at the P^(k+1) lattice nodes
  FluxX,     ///< x component of q_h at the P^k lattice nodes
  FluxY,     ///< y component of q_h at the P^k lattice nodes
};

/// Rows ordered by element, then local node. Coefficients are nodal, so
/// each value is the field's coefficient at that node.
void export_field(const Discretization& disc, const State& state, ExportSpace space, int field,
                  std::ostream& out);

/// Throws std::ios_base::failure with the path and system message.
void export_field(const Discretization& disc, const State& state, ExportSpace space, int field,
                  const std::string& path);

}  // namespace ihdg

#endif  // IHDG_EXPORT_HPP
