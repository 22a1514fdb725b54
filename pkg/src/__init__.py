"""
루트 시스템 압축 검증 도구 소스 코드

E6/E7/E8 루트 시스템을 작은 유한 공간 (Z/p)^m 으로 압축하는 사상을 만들고,
관련 정리를 전수 계산으로 검증하며 그림과 JSON 을 출력합니다.
"""

__version__ = "1.1.0"
