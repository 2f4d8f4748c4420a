# 3D multiple-container bin packing: best-match EMS decoder and genetic algorithm
