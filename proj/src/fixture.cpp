#include "sdea/fixture.hpp"

namespace sdea {

Dataset table1_fixture() {
  Eigen::MatrixXd x(5, 10), y(3, 10);
  // columns are Sites 1..10
  x << 86.13, 29.26, 43.12, 24.96, 11.62, 11.88, 32.64, 20.79, 34.40, 61.74,
       16.24, 10.24, 11.31, 6.14, 2.21, 4.97, 6.88, 12.97, 11.04, 14.50,
       48.21, 41.96, 38.19, 24.81, 6.85, 18.73, 28.10, 54.85, 38.16, 49.09,
       49.69, 40.65, 35.03, 25.15, 6.37, 18.04, 25.45, 52.07, 42.40, 42.92,
       9, 5, 9, 7, 4, 4, 7, 8, 8, 9;
  y << 54.53, 24.69, 36.41, 14.94, 7.81, 12.59, 17.06, 20.19, 26.13, 46.42,
       58.98, 33.89, 40.62, 17.58, 6.94, 16.85, 16.99, 30.64, 29.80, 51.59,
       38.16, 26.02, 28.51, 16.19, 5.37, 12.84, 17.82, 33.16, 26.29, 35.20;
  auto d = Dataset::from_means(x, y);
  for (int j = 0; j < 10; ++j) d.dmu_names[j] = "Site " + std::to_string(j + 1);
  d.input_names = {"mother_education", "parent_occupation", "parental_visits", "counseling",
                   "teachers"};
  d.output_names = {"reading", "math", "coopersmith"};
  return d;
}

}  // namespace sdea
