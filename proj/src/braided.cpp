namespace qma {}
