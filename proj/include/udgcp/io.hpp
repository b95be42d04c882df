#pragma once

#include <functional>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "udgcp/geometry.hpp"
#include "udgcp/oracle.hpp"

namespace udgcp {

/// Points as `x,y` lines. Blank lines, `#` comments and one leading `x,y`
/// header are skipped. Errors name the source and line.
std::vector<Point> read_points_csv(std::istream& in, const std::string& source = "<input>");
std::vector<Point> read_points_file(const std::string& path);
/// Shortest round-trip decimal form.
void write_points_csv(std::ostream& out, const std::vector<Point>& pts);

/// The `cycles` array of a certificate (or a bare array of vertex lists).
std::vector<Cycle> read_cycles_json(std::istream& in, const std::string& source = "<input>");

/// Worker count from UDGCP_THREADS; 1 when unset or invalid.
int thread_count();
/// Runs f(0..n-1) on up to `threads` workers. Index order of results is the
/// caller's business; f must only touch its own slot.
void parallel_for(int n, int threads, const std::function<void(int)>& f);

}  // namespace udgcp
