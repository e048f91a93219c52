#pragma once

#define PSSPH_VERSION "0.1.0"
