# src/__init__.py

"""admin-lab: adversarial dependence minimization toolkit.

Инициализация пакета без тяжёлых импортов,
чтобы избежать циклических зависимостей.
"""
