#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""渐近费马判据工具箱主程序。

计算工具箱：构造分圆 Z_l-扩张的层、分析素数分裂、枚举 S-单位方程的解，
并为各条主定理生成逐条假设的证书。

运行要求:
    - Python 3.9+
    - numpy、sympy、tqdm（见 requirements.txt）

使用方法:
    python main.py --help
    python main.py wieferich --base 2 --max 100000
"""

import sys
from typing import NoReturn

from cli import main as cli_main


def main() -> NoReturn:
    """程序入口。

    把命令行参数交给 cli.main，并以它返回的退出码结束进程。
    Ctrl-C 中断时以 130 退出。

    Raises:
        SystemExit: 总是以子命令的退出码退出
    """
    try:
        code = cli_main()
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        code = 130
    finally:
        sys.stdout.flush()
    sys.exit(code)


if __name__ == "__main__":
    main()
