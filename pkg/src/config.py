#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""工具箱配置文件模块。

本模块包含渐近费马判据工具箱的所有配置常量和参数设置。
所有的规模上限、随机种子、扫描参数都在这里定义，便于调整和维护。

典型用法示例:
    from config import LAYER_DEGREE_CAP, DEFAULT_SEED

    layer = build_layer(5, 1, degree_cap=LAYER_DEGREE_CAP)
    factors = factor_fp(f, seed=DEFAULT_SEED)
"""

# =============================================================================
# 版本信息
# =============================================================================

TOOL_NAME: str = "fermat_layers"  # 工具名称
TOOL_VERSION: str = "1.0.0"  # 工具版本（写入 RunManifest）

# =============================================================================
# 素性测试
# =============================================================================

# 对 n < 3.3e24 确定性的 Miller-Rabin 见证集（覆盖全部 64 位整数）
MILLER_RABIN_WITNESSES: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
DETERMINISTIC_LIMIT: int = 3_317_044_064_679_887_385_961_981  # 上述见证集确定性的上界
EXTRA_RANDOM_ROUNDS: int = 24  # 超出上界时追加的随机轮数（误判率 ≤ 4^-24）
TRIAL_DIVISION_PRIMES: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# =============================================================================
# 有限域多项式分解
# =============================================================================

DEFAULT_SEED: int = 20240601  # 等度分解的默认随机种子（保证可复现）

# =============================================================================
# 数域构造
# =============================================================================

# 不可约性预检所用的辅助素数（模某个素数不可约即可判定）
IRREDUCIBILITY_PRIMES: tuple[int, ...] = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)
FLOAT_NORM_CEILING: float = 2.0 ** 36  # 浮点范数预筛选的可信上限，超出则退回精确计算

# =============================================================================
# 分圆层构造
# =============================================================================

LAYER_DEGREE_CAP: int = 25  # 层次与复合域的默认次数上限（l=7,n=2 即 49 默认被拒绝）
PRIMITIVE_SHIFTS: tuple[int, ...] = (1, 2, 3, -1, -2)  # 本原元 θ + cη 的平移序列
PERIOD_NUMERIC_TOLERANCE: float = 1e-6  # 数值周期检验的相对容差

# =============================================================================
# 扫描参数
# =============================================================================

SCAN_CHUNK_SIZE: int = 50_000  # Wieferich 扫描的子区间长度
SCAN_WORKERS: int = 1  # 默认工作进程数（1 表示在当前进程内顺序执行）
SHOW_PROGRESS: bool = False  # 是否显示 tqdm 进度条（输出到 stderr）

# =============================================================================
# S-单位搜索
# =============================================================================

DEFAULT_HEIGHT_BOUND: int = 8  # 默认坐标盒高度 H
DEFAULT_EXPONENT_WINDOW: int = 8  # 有理数域快速路径的默认指数窗口 |e| ≤ 8
BOX_SIZE_LIMIT: int = 5_000_000  # 盒中格点数量上限，防止误用导致的超长扫描

# =============================================================================
# 假设检验引擎
# =============================================================================

ODD_SQUARES_MOD_32: frozenset[int] = frozenset({1, 9, 17, 25})  # 模 32 的奇平方剩余
SQRT_MOD_P5_BOX_CAP: int = 32 ** 3  # 直接枚举 𝒪/32𝒪 平方根时允许的最大元素数
VALUATION_BOUND: int = 4  # max{|v(λ)|, |v(μ)|} 的上界
H_PLUS_CHOICES: tuple[str, ...] = ("odd", "even")  # --h-plus 允许的奇偶性取值

# =============================================================================
# 日志配置
# =============================================================================

LOG_LEVEL: str = "WARNING"  # 默认日志级别
LOG_FORMAT: str = "%(levelname)s %(name)s: %(message)s"  # 日志格式
