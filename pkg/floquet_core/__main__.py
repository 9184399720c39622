"""python -m floquet_core"""
from .main import main

main()
