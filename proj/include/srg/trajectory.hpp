#ifndef SRG_TRAJECTORY_HPP
#define SRG_TRAJECTORY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace srg {

/// One sampled time point of normalized counts. Shared between the
/// simulator (tau = t/n) and the fluid model, so columns diff directly.
struct trajectory_row {
    double tau = 0.0;
    double p = 0.0;
    double v1 = 0.0;
    double v2 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
};

inline constexpr const char* k_trajectory_csv_header = "tau,p,v1,v2,s1,s2,s3";

void write_trajectory_csv(std::ostream& out, const std::vector<trajectory_row>& rows);
void write_trajectory_csv(const std::string& path, const std::vector<trajectory_row>& rows);
std::vector<trajectory_row> read_trajectory_csv(std::istream& in);

/// Pointwise mean of several equally sampled trajectories, truncated to the
/// shortest one.
std::vector<trajectory_row> mean_trajectory(const std::vector<std::vector<trajectory_row>>& runs);

/// Linear interpolation of a trajectory at time tau (rows must have
/// nondecreasing tau; tau outside the range clamps to the ends).
trajectory_row interpolate_row(const std::vector<trajectory_row>& rows, double tau);

} // namespace srg

#endif
