#include "parasol/trace.hpp"

#include <algorithm>
#include <limits>

#include "parasol/errors.hpp"

namespace parasol {

double StepDiagnostics::min_dt() const {
    double m = std::numeric_limits<double>::infinity();
    for (double dt : accepted_dt) m = std::min(m, dt);
    return m;
}

double StepDiagnostics::max_dt() const {
    double m = 0.0;
    for (double dt : accepted_dt) m = std::max(m, dt);
    return m;
}

void Trace::check_invariants() const {
    if (times.empty() || times.size() != snapshots.size())
        throw invalid_input("trace: times and snapshots disagree");
    if (times.front() != 0.0) throw invalid_input("trace: times[0] must be 0");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1])) throw invalid_input("trace: times not increasing");
}

} // namespace parasol
