#pragma once

// Elementary sl3 webs. Signatures are read upward, left to right.

#include <string>

#include "spider/planar_web.hpp"

namespace spider::sl3 {

// (s,s) below -> opposite sign above; sink for "++", source for "--"
Web y_merge(char s);
// one strand below -> (s,s) above, the flip of y_merge
Web y_split(char s);
// U-turn closing "+-" or "-+" from below
Web cap(const std::string& sig);
// U-turn opening "+-" or "-+" above
Web cup(const std::string& sig);
// H on two like strands "++" or "--": two trivalent vertices joined by a vertical edge
Web h_web(char s);
// H turning "+-" into "-+" (or "-+" into "+-") with a horizontal middle edge
Web h_mixed(const std::string& lower);
// free circle
Web circle();

// tensor g with identity strands: `left` strands on its left, `right_sig` on its right
Web place(const Web& g, const std::string& left_sig, const std::string& right_sig);

std::string segregated(int a, int b);
std::string dual(const std::string& sig);  // reverse order and swap signs

}  // namespace spider::sl3
