#pragma once

#define RINGENDS_VERSION "0.1.0"
