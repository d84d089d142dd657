#ifndef NCRK_VERSION_HPP
#define NCRK_VERSION_HPP

#define NCRK_VERSION_STRING "0.1.0"

#endif
