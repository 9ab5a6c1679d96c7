#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "qsw/analysis.hpp"
#include "qsw/conditions.hpp"

// CSV and JSON serialization for condition reports and convergence studies.
// Formatting is fixed (%.17g) so identical configs produce byte-identical files.

namespace qsw {

inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline const char* condition_csv_header() { return "l,n,alpha,gamma,u0,upi,mu,epsilon"; }

inline std::string condition_csv_row(const ConditionReport& r) {
    std::string s = std::to_string(r.l) + "," + std::to_string(r.n);
    for (double v : {r.alpha, r.gamma, r.u0, r.upi, r.mu, r.epsilon}) s += "," + fmt_g17(v);
    return s;
}

inline void write_condition_csv(std::ostream& os, const std::vector<ConditionReport>& rows) {
    os << condition_csv_header() << "\n";
    for (const auto& r : rows) os << condition_csv_row(r) << "\n";
}

inline const char* convergence_csv_header() {
    return "l,n,gap_phi_freq,gap_phi_time,gap_psi_freq,gap_psi_time,"
           "mask_dist,phi_factor_dist,phi_factor_deriv,perp_dist,mu,envelope,uc_phi,uc_psi";
}

inline void write_convergence_csv(std::ostream& os, const ConvergenceStudy& st) {
    os << convergence_csv_header() << "\n";
    for (const auto& r : st.rows) {
        os << r.l << "," << r.n;
        for (double v : {r.gap_phi_freq, r.gap_phi_time, r.gap_psi_freq, r.gap_psi_time,
                         r.mask_dist, r.phi_factor_dist, r.phi_factor_deriv, r.perp_dist, r.mu,
                         r.envelope, r.uc_phi, r.uc_psi})
            os << "," << fmt_g17(v);
        os << "\n";
    }
}

inline void write_convergence_json(std::ostream& os, const ConvergenceStudy& st) {
    os << "{\n  \"meyer\": {\"phi_freq2\": " << fmt_g17(st.meyer_phi_freq2)
       << ", \"phi_time2\": " << fmt_g17(st.meyer_phi_time2)
       << ", \"psi_freq2\": " << fmt_g17(st.meyer_psi_freq2)
       << ", \"psi_time2\": " << fmt_g17(st.meyer_psi_time2)
       << ", \"uc_phi\": " << fmt_g17(st.meyer_uc_phi)
       << ", \"uc_psi\": " << fmt_g17(st.meyer_uc_psi) << "},\n  \"rows\": [\n";
    for (std::size_t i = 0; i < st.rows.size(); ++i) {
        const auto& r = st.rows[i];
        os << "    {\"l\": " << r.l << ", \"n\": " << r.n
           << ", \"gap_phi_freq\": " << fmt_g17(r.gap_phi_freq)
           << ", \"gap_phi_time\": " << fmt_g17(r.gap_phi_time)
           << ", \"gap_psi_freq\": " << fmt_g17(r.gap_psi_freq)
           << ", \"gap_psi_time\": " << fmt_g17(r.gap_psi_time)
           << ", \"mask_dist\": " << fmt_g17(r.mask_dist)
           << ", \"phi_factor_dist\": " << fmt_g17(r.phi_factor_dist)
           << ", \"phi_factor_deriv\": " << fmt_g17(r.phi_factor_deriv)
           << ", \"perp_dist\": " << fmt_g17(r.perp_dist) << ", \"mu\": " << fmt_g17(r.mu)
           << ", \"envelope\": " << fmt_g17(r.envelope) << ", \"uc_phi\": " << fmt_g17(r.uc_phi)
           << ", \"uc_psi\": " << fmt_g17(r.uc_psi) << "}" << (i + 1 < st.rows.size() ? "," : "")
           << "\n";
    }
    os << "  ]\n}\n";
}

} // namespace qsw
