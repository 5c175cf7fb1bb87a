// Compares the serial reference path of the verification engines against the
// OpenMP path on a fixed workload and checks that the reports agree.

#include "siegel/hecke.hpp"
#include "siegel/json_io.hpp"

#include <chrono>
#include <iostream>
#include <vector>

using namespace siegel;

namespace {

double run_workload(ExecPolicy pol, std::vector<VerifyReport>& sink) {
    std::vector<GramLattice> lattices;
    lattices.emplace_back(IntMat{{2}});
    lattices.emplace_back(IntMat{{4}});
    lattices.emplace_back(IntMat{{2, 1}, {1, 2}});
    lattices.emplace_back(IntMat{{4, 1}, {1, 6}});
    lattices.emplace_back(IntMat{{6, 2}, {2, 8}});

    auto start = std::chrono::steady_clock::now();
    for (long p : {2L, 3L})
        for (const auto& lp : lattices) {
            int n = lp.rank() + 1;
            sink.push_back(verify_intertwine_tp(lp, p, pol));
            for (int j = 1; j <= n; ++j) sink.push_back(verify_intertwine_ttilde(lp, p, j, pol));
            sink.push_back(verify_projection_classes(lp, p, pol));
        }
    auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = (argc > 1) ? std::atoi(argv[1]) : 3;

    std::vector<VerifyReport> serial_reports, parallel_reports;
    double t_serial = 0, t_parallel = 0;
    for (int r = 0; r < repeats; ++r) {
        std::vector<VerifyReport> s, q;
        t_serial += run_workload(ExecPolicy::Serial, s);
        t_parallel += run_workload(ExecPolicy::Parallel, q);
        if (r == 0) {
            serial_reports = std::move(s);
            parallel_reports = std::move(q);
        }
    }

    bool all_pass = true, identical = serial_reports.size() == parallel_reports.size();
    for (size_t i = 0; i < serial_reports.size() && identical; ++i) {
        all_pass = all_pass && serial_reports[i].all_pass();
        identical = report_to_json(serial_reports[i]) == report_to_json(parallel_reports[i]);
    }

    std::cout << "workload: intertwine-tp, intertwine-tj (all j), projection-classes\n"
              << "          over 5 lattices x p in {2,3}, averaged over " << repeats
              << " runs\n"
              << "serial   : " << t_serial / repeats << " s\n"
              << "openmp   : " << t_parallel / repeats << " s\n"
              << "speedup  : " << (t_parallel > 0 ? t_serial / t_parallel : 0.0) << "x\n"
              << "reports identical: " << (identical ? "yes" : "NO") << "\n"
              << "all checks pass  : " << (all_pass ? "yes" : "NO") << "\n";
    return (identical && all_pass) ? 0 : 1;
}
