#ifndef PERFECTCHAIN_IO_HPP
#define PERFECTCHAIN_IO_HPP

// Text formats: JSON for matrices and designs, CSV for trajectories and
// tables, SVG for plots.  All float output uses the shortest decimal that
// round-trips (at most 17 significant digits).

#include "perfectchain/chain.hpp"
#include "perfectchain/dynamics.hpp"
#include "perfectchain/jacobi.hpp"

#include <json.hpp>

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace perfectchain {

std::string format_double(double v);

/// { "n", "diag", "offdiag" } plus "diag_exact" / "offdiag_sq_exact" when an
/// exact form is known.  Exact values are JSON integers when integral and
/// small enough, "p/q" strings otherwise.
nlohmann::ordered_json matrix_to_json(const JacobiMatrix& m, const ExactJacobi* exact = nullptr);

struct ParsedMatrix {
  JacobiMatrix matrix;
  std::optional<ExactJacobi> exact;
};

/// Inverse of matrix_to_json.  Throws std::invalid_argument on malformed or
/// inconsistent input.
ParsedMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::ordered_json design_to_json(const ChainDesign& d);
nlohmann::ordered_json magic_to_json(const MagicDesign& d);

/// Header "n,omega_squared,i,M,K"; K is empty on the last row of each n.
void write_magic_csv(std::ostream& os, const std::vector<MagicDesign>& table);

/// Header "t,i,q,qdot,u", one row per snapshot and site (i is 1-based).
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Matrix and chain parameter profile with omega = pi/(n-1) and the given
/// first mass.  Header "quantity,i,x,value,parabola".  a and M sit at
/// x = (i-1)/(n-1); b and K at the bond midpoint x = (i-1/2)/(n-1).  The
/// parabola column holds the large-n limit for a~ and b~ and is empty for
/// M and K.
struct ProfileRow {
  std::string quantity;  // "a", "b", "M", "K"
  std::size_t i = 0;
  double x = 0.0;
  double value = 0.0;
  std::optional<double> parabola;
};
std::vector<ProfileRow> parameter_profile(std::size_t n, double m1);
void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows);

/// Stacked snapshot rows, one horizontal strip per snapshot, physical
/// displacement drawn as stems.
void write_trajectory_svg(std::ostream& os, const Trajectory& traj);
void write_profile_svg(std::ostream& os, const std::vector<ProfileRow>& rows, std::size_t n);

/// One number per non-blank line; '#' starts a comment.
std::vector<std::string> read_number_lines(const std::string& path);

}  // namespace perfectchain

#endif  // PERFECTCHAIN_IO_HPP
