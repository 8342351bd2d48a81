namespace dyncubic {}
