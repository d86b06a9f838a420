#include "blognet/util.hpp"

#include <cstdio>

namespace blognet {

std::string fmt_num(double x) { return fmt_num(x, 15); }

std::string fmt_num(double x, int sig_digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", sig_digits, x);
    return std::string(buf);
}

}  // namespace blognet
