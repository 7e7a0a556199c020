#pragma once

#include <string>
#include <vector>

namespace convexinv {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct CheckOptions {
    double d_tolerance = 1e-6;           // |d_mm - 1| and |d_mn| (m > n) bound
    double orthonormality_tolerance = 1e-8;
    double oracle_tolerance = 0.01;      // relative L2 error of the forward solver
    double gradient_tolerance = 1e-5;    // relative error of directional derivatives
    double null_tolerance = 0.05;        // max |a| for the null scatterer
};

CheckResult check_orthonormality(const CheckOptions& opt = {});
CheckResult check_d_structure(const CheckOptions& opt = {});
// k = 1 and k = 2 on the default grid, plus error decrease under refinement.
std::vector<CheckResult> check_disk_oracle(const CheckOptions& opt = {});
// Largest relative error over 20 random real and 20 imaginary directions on
// a 7 x 7 grid with two modes.
CheckResult check_gradient(const CheckOptions& opt = {});
// Clean data from an empty scene on the default configuration.
CheckResult check_null_scatterer(const CheckOptions& opt = {});

std::vector<CheckResult> run_validation_suite(const CheckOptions& opt = {});

}  // namespace convexinv
