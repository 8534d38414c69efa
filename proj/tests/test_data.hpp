#ifndef QHCALC_TEST_DATA_HPP
#define QHCALC_TEST_DATA_HPP

#include <string>

#include "qhcalc/algebra.hpp"

inline std::string data_file(const std::string& name) {
    return std::string(QHCALC_DATA_DIR) + "/" + name;
}

inline qhcalc::AlgebraPtr load_algebra(const std::string& name) {
    return qhcalc::build_algebra_ptr(qhcalc::load_presentation(data_file(name)));
}

#endif
