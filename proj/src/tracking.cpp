#include "dsa2/tracking.hpp"

#include "dsa2/errors.hpp"

namespace dsa2 {

TrackerState init_tracking(const Mat& grads0) {
  if (grads0.rows < 1 || grads0.cols < 1) throw ConfigError("init_tracking: empty gradient matrix");
  return TrackerState{grads0, grads0, grads0};
}

void tracking_step(TrackerState& st, const WeightMatrix& p, const Mat& new_grads) {
  const int n = st.s.rows, m = st.s.cols;
  if (p.n != n) throw ConfigError("tracking_step: weight matrix size mismatch");
  if (new_grads.rows != n || new_grads.cols != m) throw ConfigError("tracking_step: gradient shape mismatch");

  Mat next(n, m);
  for (int i = 0; i < n; ++i) {
    const double wii = p.at(i, i);
    double* out = &next.a[static_cast<size_t>(i) * m];
    const double* si = &st.s.a[static_cast<size_t>(i) * m];
    for (int c = 0; c < m; ++c) out[c] = wii * si[c];
    for (int j : p.nbrs[i]) {
      const double wij = p.at(i, j);
      const double* sj = &st.s.a[static_cast<size_t>(j) * m];
      for (int c = 0; c < m; ++c) out[c] += wij * sj[c];
    }
    const double* gold = &st.last_grad.a[static_cast<size_t>(i) * m];
    const double* gnew = &new_grads.a[static_cast<size_t>(i) * m];
    for (int c = 0; c < m; ++c) out[c] = (out[c] - gold[c]) + gnew[c];
  }
  st.s = std::move(next);
  st.last_grad = new_grads;
  for (size_t k = 0; k < st.z.a.size(); ++k) st.z.a[k] += st.s.a[k];
}

}  // namespace dsa2
