#pragma once

#include <string>
#include <vector>

#include "ordlab/certificates.hpp"

namespace ordlab {

enum class Verdict { CertifiedYes, CertifiedNo, PaperCited, Unknown };

struct ClassEntry {
    Verdict verdict = Verdict::Unknown;
    std::vector<std::string> certs;
    std::string reference;  // for cited verdicts
    std::string reason;
};

struct ClassReport {
    std::string function;
    ClassEntry continuous, dbsc, b14, b12, b1;
    std::string beta_sup;
    bool beta_lower_only = false;
    std::vector<Certificate> certificates;
};

// Classes are nested: continuous, DBSC, B_{1/4}, B_{1/2}, B_1.
ClassReport classify(const SimpleFn& f, const RunOptions& opt = {});

const char* verdict_name(Verdict v);

// convention recorded in a gallery descriptor ("parity=odd"), even otherwise
Convention descriptor_convention(const std::string& descriptor);

}  // namespace ordlab
