# Data package - structured material tables
