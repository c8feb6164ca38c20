from setuptools import setup, find_packages


with open('requirements.txt', 'r') as f:
    required = f.read().splitlines()

with open('test_requirements.txt', 'r') as f:
    test_required = f.read().splitlines()

setup(
    name = 'stardil',
    version = '0.1.0',
    description = """optimal star centers under the dilation (stretch factor) objective""",
    packages = find_packages(exclude=['tests']),
    install_requires = required,
    tests_require = test_required,
    include_package_data=True,
    package_data={'stardil': ['defaults/*.json']},
    entry_points={
          'console_scripts': [
              'stardil = stardil.bin.dispatch:main'
        ]
    },
    setup_requires=['pytest-runner'],
)
