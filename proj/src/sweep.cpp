#include "nucav/sweep.hpp"

#include <cstdlib>
#include <fstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nucav {

int max_threads() {
  if (const char* env = std::getenv("NUCAV_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void parallel_for(int n, const std::function<void(int)>& f) {
#ifdef _OPENMP
  const int nt = max_threads();
#pragma omp parallel for schedule(dynamic, 1) num_threads(nt)
  for (int i = 0; i < n; ++i) f(i);
#else
  for (int i = 0; i < n; ++i) f(i);
#endif
}

void serial_for(int n, const std::function<void(int)>& f) {
  for (int i = 0; i < n; ++i) f(i);
}

std::string format17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string csv_to_string(const std::string& header,
                          const std::vector<std::vector<double>>& rows) {
  std::string out = header + "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += ",";
      out += format17(row[i]);
    }
    out += "\n";
  }
  return out;
}

void write_csv(const std::string& path, const std::string& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write: " + path);
  out << csv_to_string(header, rows);
}

}  // namespace nucav
