#pragma once

#define BLINDCOMP_VERSION "0.1.0"
