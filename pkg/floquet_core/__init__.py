"""
週期磁場中帶電粒子的 Floquet 分析工具包

模組：
- models: 磁場剖面、位勢與 JSON 配置
- hill: Hill 方程基本解、單值矩陣與穩定性
- classical: 頻閃古典軌跡
- quantum: 二維傳播子與色散估計
- scattering: 奇異積分、Cook 和與波算子缺陷
"""

__version__ = "0.1.0"
